#include "conics/unimodular.hpp"

#include <algorithm>

namespace conics {

namespace {

// Nearest-integer quotient: returns k with |v - k m| <= |m| / 2.
i128 nearest_multiple(i128 v, i128 m)
{
    const i128 am = abs_val(m);
    i128 k = floor_div(checked_add(checked_mul<i128>(2, v), am), checked_mul<i128>(2, am));
    return m < 0 ? -k : k;
}

}  // namespace

UnimodularMatrix complete_to_sl3(const IVec3& a)
{
    if (a[0] == 0 && a[1] == 0 && a[2] == 0) throw std::invalid_argument("complete_to_sl3: zero vector");
    if (gcd(a[0], a[1], a[2]) != 1) throw std::invalid_argument("complete_to_sl3: vector is not primitive");

    // Order indices: smallest nonzero modulus first, then by modulus.
    std::array<int, 3> perm{0, 1, 2};
    std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) {
        auto key = [&](int k) { return a[k] == 0 ? std::numeric_limits<i64>::max() : abs_val(a[k]); };
        return key(i) < key(j);
    });
    const int nonzero = static_cast<int>(std::count_if(a.begin(), a.end(), [](i64 v) { return v != 0; }));

    IMat3 local{};
    const i128 b1 = a[perm[0]], b2 = a[perm[1]], b3 = a[perm[2]];
    if (nonzero == 1) {
        // b1 = +-1: columns (e2, b, e3) in permuted coordinates.
        local = {{{0, static_cast<i64>(b1), 0}, {1, 0, 0}, {0, 0, 1}}};
    } else {
        // Solve b.y = 1, then shift y so that |x2|, |x3| <= |b1| / 2.
        const ExtGcd e12 = ext_gcd(b1, b2);
        const ExtGcd e123 = ext_gcd(e12.g, b3);
        i128 y1 = checked_mul(e123.x, e12.x), y2 = checked_mul(e123.x, e12.y), y3 = e123.y;
        const i128 s = nearest_multiple(y2, b1);
        const i128 t = nearest_multiple(y3, b1);
        // x = y + s (b2, -b1, 0) + t (b3, 0, -b1), with -s, -t chosen as the shifts.
        i128 x2 = checked_sub(y2, checked_mul(s, b1));
        i128 x3 = checked_sub(y3, checked_mul(t, b1));
        i128 x1 = checked_add(y1, checked_add(checked_mul(s, b2), checked_mul(t, b3)));
        if (x1 == 0 && x2 == 0) {
            x1 = checked_add(x1, b2);
            x2 = checked_sub(x2, b1);
        }
        // x1 b1 + x2 b2 + x3 b3 = 1
        const i128 g = gcd(x1, x2);
        const i128 p1 = x1 / g, p2 = x2 / g;
        // p1 X + p2 Y = x3 with |Y| small.
        const ExtGcd ep = ext_gcd(p1, p2);
        i128 X = checked_mul(ep.x, x3), Y = checked_mul(ep.y, x3);
        if (p1 != 0) {
            const i128 k = nearest_multiple(Y, p1);
            Y = checked_sub(Y, checked_mul(k, p1));
            X = checked_add(X, checked_mul(k, p2));
        } else {
            const i128 k = nearest_multiple(X, p2);
            X = checked_sub(X, checked_mul(k, p2));
            Y = checked_add(Y, checked_mul(k, p1));
        }
        local = {{{narrow(p2), narrow(b1), narrow(-X)},
                  {narrow(-p1), narrow(b2), narrow(-Y)},
                  {0, narrow(b3), narrow(g)}}};
    }

    // Row k of `local` belongs to coordinate perm[k].
    IMat3 m{};
    for (int k = 0; k < 3; ++k) m[perm[k]] = local[k];
    if (determinant(m) == -1) {
        for (auto& row : m) row[0] = -row[0];
    }
    return UnimodularMatrix(m);
}

bool satisfies_completion_contract(const UnimodularMatrix& m, const IVec3& a, i64 bound)
{
    if (m.column(1) != a) return false;
    const i64 limit = checked_mul(bound, std::max<i64>(1, sup_norm(a)));
    return sup_norm(m.matrix()) <= limit && determinant(m.matrix()) == 1;
}

}  // namespace conics
