#include "conics/zeros.hpp"

#include <sstream>
#include <tuple>

namespace conics {

void for_each_zero_in_box(const TernaryQuadraticForm& q, i64 radius, const std::function<void(const IVec3&)>& visit)
{
    if (radius < 0) return;
    const IMat3 a = gram_doubled(q);
    // Solve for the coordinate with the largest diagonal coefficient.
    int v = 0;
    for (int i = 1; i < 3; ++i)
        if (abs_val(a[i][i]) > abs_val(a[v][v])) v = i;
    const int i0 = (v + 1) % 3, i1 = (v + 2) % 3;
    const i128 alpha = a[v][v] / 2;
    const i128 a00 = a[i0][i0] / 2, a11 = a[i1][i1] / 2, a01 = a[i0][i1];

    IVec3 x{};
    for (i64 u0 = -radius; u0 <= radius; ++u0) {
        for (i64 u1 = -radius; u1 <= radius; ++u1) {
            const i128 beta = checked_add(checked_mul<i128>(a[v][i0], u0), checked_mul<i128>(a[v][i1], u1));
            const i128 gamma = checked_add(checked_add(checked_mul(checked_mul<i128>(a00, u0), u0),
                                                       checked_mul(checked_mul<i128>(a01, u0), u1)),
                                           checked_mul(checked_mul<i128>(a11, u1), u1));
            x[i0] = u0;
            x[i1] = u1;
            const IntegerRoots roots = integer_roots(alpha, beta, gamma);
            if (roots.all) {
                for (i64 z = -radius; z <= radius; ++z) {
                    if (u0 == 0 && u1 == 0 && z == 0) continue;
                    x[v] = z;
                    visit(x);
                }
                continue;
            }
            for (int r = 0; r < roots.count; ++r) {
                const i128 z = roots.roots[r];
                if (z < -radius || z > radius) continue;
                if (u0 == 0 && u1 == 0 && z == 0) continue;
                x[v] = static_cast<i64>(z);
                visit(x);
            }
        }
    }
}

std::string ZeroSearchResult::message() const
{
    std::ostringstream os;
    if (zero) {
        os << "zero found: (" << zero->xi[0] << "," << zero->xi[1] << "," << zero->xi[2] << ")";
    } else if (conclusive) {
        os << "no zero with sup norm <= " << cap << "; cap >= 3<Q> (no rational zero, by the Cassels guarantee)";
    } else {
        os << "no zero with sup norm <= " << cap << "; cap < 3<Q> (inconclusive)";
    }
    return os.str();
}

i64 default_zero_cap(const TernaryQuadraticForm& q) { return checked_mul<i64>(3, height(q)); }

namespace {

auto tie_key(const IVec3& x)
{
    return std::make_tuple(sup_norm(x), abs_val(x[0]), abs_val(x[1]), abs_val(x[2]), x[0] < 0, x[1] < 0, x[2] < 0);
}

}  // namespace

ZeroSearchResult find_primitive_zero(const TernaryQuadraticForm& q, i64 cap)
{
    if (cap < 1) throw std::invalid_argument("zero search cap must be positive");
    ZeroSearchResult result;
    result.cap = cap;
    result.conclusive = cap >= default_zero_cap(q);
    i64 radius = 1;
    while (true) {
        const i64 r = std::min(radius, cap);
        std::optional<IVec3> best;
        for_each_zero_in_box(q, r, [&](const IVec3& x) {
            if (gcd(x[0], x[1], x[2]) != 1) return;
            if (!best || tie_key(x) < tie_key(*best)) best = x;
        });
        if (best) {
            result.zero = PrimitiveZero{*best, r};
            return result;
        }
        if (r == cap) return result;
        radius = checked_mul<i64>(radius, 2);
    }
}

}  // namespace conics
