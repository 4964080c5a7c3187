#include "conics/quadform.hpp"

#include <sstream>

namespace conics {

IMat3 identity_matrix() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

i128 determinant(const IMat3& m)
{
    auto c = [&](int i, int j) { return static_cast<i128>(m[i][j]); };
    i128 t1 = checked_mul(c(0, 0), checked_sub(checked_mul(c(1, 1), c(2, 2)), checked_mul(c(1, 2), c(2, 1))));
    i128 t2 = checked_mul(c(0, 1), checked_sub(checked_mul(c(1, 0), c(2, 2)), checked_mul(c(1, 2), c(2, 0))));
    i128 t3 = checked_mul(c(0, 2), checked_sub(checked_mul(c(1, 0), c(2, 1)), checked_mul(c(1, 1), c(2, 0))));
    return checked_add(checked_sub(t1, t2), t3);
}

IMat3 adjugate(const IMat3& m)
{
    IMat3 out{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // cofactor C_ji placed at (i, j)
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            i128 v = checked_sub(checked_mul<i128>(m[r0][c0], m[r1][c1]), checked_mul<i128>(m[r0][c1], m[r1][c0]));
            out[i][j] = narrow(v);
        }
    }
    return out;
}

IMat3 multiply(const IMat3& a, const IMat3& b)
{
    IMat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            i128 s = 0;
            for (int k = 0; k < 3; ++k) s = checked_add(s, checked_mul<i128>(a[i][k], b[k][j]));
            out[i][j] = narrow(s);
        }
    return out;
}

IMat3 transpose(const IMat3& m)
{
    IMat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = m[j][i];
    return out;
}

IVec3 apply(const IMat3& m, const IVec3& x)
{
    IVec3 out{};
    for (int i = 0; i < 3; ++i) {
        i128 s = 0;
        for (int k = 0; k < 3; ++k) s = checked_add(s, checked_mul<i128>(m[i][k], x[k]));
        out[i] = narrow(s);
    }
    return out;
}

i64 sup_norm(const IMat3& m)
{
    i64 r = 0;
    for (const auto& row : m)
        for (i64 v : row) r = std::max(r, abs_val(v));
    return r;
}

i64 sup_norm(const IVec3& x) { return std::max({abs_val(x[0]), abs_val(x[1]), abs_val(x[2])}); }

std::string to_string(const IMat3& m)
{
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 3; ++i) {
        os << (i ? ",[" : "[") << m[i][0] << "," << m[i][1] << "," << m[i][2] << "]";
    }
    os << "]";
    return os.str();
}

UnimodularMatrix::UnimodularMatrix(const IMat3& m) : m_(m)
{
    if (determinant(m) != 1) throw std::invalid_argument("UnimodularMatrix: determinant must be +1, got " + to_string(m));
}

UnimodularMatrix UnimodularMatrix::inverse() const { return UnimodularMatrix(adjugate(m_)); }

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const
{
    return UnimodularMatrix(multiply(m_, o.m_));
}

TernaryQuadraticForm::TernaryQuadraticForm(i64 c200_, i64 c110_, i64 c101_, i64 c020_, i64 c011_, i64 c002_)
    : c200(c200_), c110(c110_), c101(c101_), c020(c020_), c011(c011_), c002(c002_)
{
    if (c200 == 0 && c110 == 0 && c101 == 0 && c020 == 0 && c011 == 0 && c002 == 0)
        throw std::invalid_argument("quadratic form: all coefficients are zero");
    if (gram_determinant(*this) == 0) throw std::invalid_argument("quadratic form is singular: " + to_string(*this));
}

TernaryQuadraticForm TernaryQuadraticForm::from_gram_doubled(const IMat3& a)
{
    for (int i = 0; i < 3; ++i) {
        if (a[i][i] % 2 != 0) throw std::invalid_argument("gram matrix must have even diagonal");
        for (int j = 0; j < 3; ++j)
            if (a[i][j] != a[j][i]) throw std::invalid_argument("gram matrix must be symmetric");
    }
    return {a[0][0] / 2, a[0][1], a[0][2], a[1][1] / 2, a[1][2], a[2][2] / 2};
}

TernaryQuadraticForm TernaryQuadraticForm::scaled(i64 k) const
{
    return {checked_mul(c200, k), checked_mul(c110, k), checked_mul(c101, k),
            checked_mul(c020, k), checked_mul(c011, k), checked_mul(c002, k)};
}

SpecialConic::SpecialConic(i64 a_, i64 b_, i64 d_, i64 e_, i64 f_) : a(a_), b(b_), d(d_), e(e_), f(f_)
{
    if (discriminant_special(*this) == 0)
        throw std::invalid_argument("special conic is singular (a e^2 - d e b + f b^2 = 0)");
}

TernaryQuadraticForm SpecialConic::form() const { return {a, b, d, 0, e, f}; }

i64 SpecialConic::gcd_be() const { return gcd(b, e); }

std::optional<SpecialConic> as_special(const TernaryQuadraticForm& q)
{
    if (q.c020 != 0) return std::nullopt;
    return SpecialConic(q.c200, q.c110, q.c101, q.c011, q.c002);
}

IMat3 gram_doubled(const TernaryQuadraticForm& q)
{
    return {{{checked_mul<i64>(2, q.c200), q.c110, q.c101},
             {q.c110, checked_mul<i64>(2, q.c020), q.c011},
             {q.c101, q.c011, checked_mul<i64>(2, q.c002)}}};
}

i128 gram_determinant(const TernaryQuadraticForm& q) { return determinant(gram_doubled(q)); }

i128 discriminant_special(const SpecialConic& s)
{
    i128 ae2 = checked_mul(checked_mul<i128>(s.a, s.e), s.e);
    i128 deb = checked_mul(checked_mul<i128>(s.d, s.e), s.b);
    i128 fb2 = checked_mul(checked_mul<i128>(s.f, s.b), s.b);
    return checked_add(checked_sub(ae2, deb), fb2);
}

i64 delta_gcd_minors(const TernaryQuadraticForm& q)
{
    const IMat3 a = gram_doubled(q);
    i128 g = 0;
    for (int r0 = 0; r0 < 3; ++r0)
        for (int r1 = r0 + 1; r1 < 3; ++r1)
            for (int c0 = 0; c0 < 3; ++c0)
                for (int c1 = c0 + 1; c1 < 3; ++c1) {
                    i128 minor = checked_sub(checked_mul<i128>(a[r0][c0], a[r1][c1]),
                                             checked_mul<i128>(a[r0][c1], a[r1][c0]));
                    g = gcd(g, minor);
                }
    return narrow(g);
}

i64 height(const TernaryQuadraticForm& q)
{
    i64 h = 0;
    for (i64 c : q.coefficients()) h = std::max(h, abs_val(c));
    return h;
}

i128 evaluate(const TernaryQuadraticForm& q, const IVec3& v)
{
    const i128 x = v[0], y = v[1], z = v[2];
    i128 s = checked_mul(checked_mul<i128>(q.c200, x), x);
    s = checked_add(s, checked_mul(checked_mul<i128>(q.c110, x), y));
    s = checked_add(s, checked_mul(checked_mul<i128>(q.c101, x), z));
    s = checked_add(s, checked_mul(checked_mul<i128>(q.c020, y), y));
    s = checked_add(s, checked_mul(checked_mul<i128>(q.c011, y), z));
    s = checked_add(s, checked_mul(checked_mul<i128>(q.c002, z), z));
    return s;
}

TernaryQuadraticForm transform(const TernaryQuadraticForm& q, const UnimodularMatrix& m)
{
    const IMat3& mm = m.matrix();
    return TernaryQuadraticForm::from_gram_doubled(multiply(transpose(mm), multiply(gram_doubled(q), mm)));
}

std::string to_string(const TernaryQuadraticForm& q)
{
    std::ostringstream os;
    os << "(" << q.c200 << "," << q.c110 << "," << q.c101 << "," << q.c020 << "," << q.c011 << "," << q.c002 << ")";
    return os.str();
}

}  // namespace conics
