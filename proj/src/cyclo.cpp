#include "lamprob/cyclo.hpp"

#include <mpfr.h>

#include <array>
#include <sstream>
#include <stdexcept>

namespace lp {

namespace {

// raw[e][b] holds the coefficient of zeta^e u^b, e in 0..ell-1, b in 0..2.
using Raw = std::vector<std::array<Rat, 3>>;

std::vector<Rat> fold(int ell, long q, Raw& raw) {
    for (int e = 0; e < ell; ++e) {
        raw[e][0] += raw[e][2] * Rat(q);
        raw[e][2] = Rat(0);
    }
    std::vector<Rat> out(2 * (ell - 1));
    for (int e = 0; e + 1 < ell; ++e)
        for (int b = 0; b < 2; ++b) out[2 * e + b] = raw[e][b] - raw[ell - 1][b];
    return out;
}

Raw raw_zero(int ell) { return Raw(ell, {Rat(0), Rat(0), Rat(0)}); }

const Rat kZero(0);

} // namespace

void CycloHalf::check_field(int ell, long q) {
    if (ell != 2 && ell != 3 && ell != 5 && ell != 7)
        throw std::invalid_argument("CycloHalf: ell must be a prime <= 7");
    if (q < 2) throw std::invalid_argument("CycloHalf: q must be >= 2");
}

CycloHalf CycloHalf::from_rat(int ell, long q, const Rat& r) {
    check_field(ell, q);
    CycloHalf x(r);
    x.promote(ell, q);
    return x;
}

CycloHalf CycloHalf::zeta(int ell, long q, long power) {
    check_field(ell, q);
    Raw raw = raw_zero(ell);
    long e = ((power % ell) + ell) % ell;
    raw[e][0] = Rat(1);
    CycloHalf x;
    x.ell_ = ell;
    x.q_ = q;
    x.c_ = fold(ell, q, raw);
    return x;
}

CycloHalf CycloHalf::from_zeta_coeffs(int ell, long q, const std::vector<Rat>& c) {
    check_field(ell, q);
    Raw raw = raw_zero(ell);
    for (size_t j = 0; j < c.size(); ++j) raw[j % ell][0] += c[j];
    CycloHalf x;
    x.ell_ = ell;
    x.q_ = q;
    x.c_ = fold(ell, q, raw);
    return x;
}

CycloHalf CycloHalf::u_pow(int ell, long q, long power) {
    long b = ((power % 2) + 2) % 2;
    long s = (power - b) / 2;
    CycloHalf x = from_rat(ell, q, Rat(q).pow(s));
    if (b) {
        x.c_[1] = x.c_[0];
        x.c_[0] = Rat(0);
    }
    return x;
}

const Rat& CycloHalf::coeff(int a, int b) const {
    if (ell_ == 0) return (a == 0 && b == 0) ? c_[0] : kZero;
    if (a < 0 || a > ell_ - 2 || b < 0 || b > 1) return kZero;
    return c_[2 * a + b];
}

void CycloHalf::promote(int ell, long q) {
    if (ell_ != 0) return;
    Rat r = c_[0];
    ell_ = ell;
    q_ = q;
    c_.assign(dim(), Rat(0));
    c_[0] = r;
}

void CycloHalf::unify(CycloHalf& o) {
    if (ell_ == 0 && o.ell_ == 0) return;
    if (ell_ == 0) { promote(o.ell_, o.q_); return; }
    if (o.ell_ == 0) { o.promote(ell_, q_); return; }
    if (ell_ != o.ell_ || q_ != o.q_)
        throw std::invalid_argument("CycloHalf: mixing different fields");
}

CycloHalf& CycloHalf::operator+=(const CycloHalf& o) {
    CycloHalf b = o;
    unify(b);
    for (int j = 0; j < dim(); ++j) c_[j] += b.c_[j];
    return *this;
}

CycloHalf& CycloHalf::operator-=(const CycloHalf& o) {
    CycloHalf b = o;
    unify(b);
    for (int j = 0; j < dim(); ++j) c_[j] -= b.c_[j];
    return *this;
}

CycloHalf& CycloHalf::operator*=(const Rat& r) {
    for (auto& c : c_) c *= r;
    return *this;
}

CycloHalf& CycloHalf::operator*=(const CycloHalf& o) {
    if (o.ell_ == 0) return *this *= o.c_[0];
    if (ell_ == 0) {
        Rat r = c_[0];
        *this = o;
        return *this *= r;
    }
    CycloHalf b = o;
    unify(b);
    Raw raw = raw_zero(ell_);
    for (int a1 = 0; a1 + 1 < ell_; ++a1)
        for (int b1 = 0; b1 < 2; ++b1) {
            const Rat& x = c_[2 * a1 + b1];
            if (x.is_zero()) continue;
            for (int a2 = 0; a2 + 1 < ell_; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    const Rat& y = b.c_[2 * a2 + b2];
                    if (y.is_zero()) continue;
                    raw[(a1 + a2) % ell_][b1 + b2] += x * y;
                }
        }
    c_ = fold(ell_, q_, raw);
    return *this;
}

CycloHalf CycloHalf::operator-() const {
    CycloHalf r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

bool operator==(const CycloHalf& a, const CycloHalf& b) {
    CycloHalf x = a, y = b;
    x.unify(y);
    return x.c_ == y.c_;
}

bool CycloHalf::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool CycloHalf::is_rational() const {
    for (int j = 1; j < dim(); ++j)
        if (!c_[j].is_zero()) return false;
    return true;
}

CycloHalf CycloHalf::inv() const {
    if (ell_ == 0) return CycloHalf(c_[0].inv());
    const int n = dim();
    // Column j of m is the coordinate vector of (*this) * basis_j.
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
    for (int j = 0; j < n; ++j) {
        CycloHalf e = from_rat(ell_, q_, Rat(0));
        e.c_[j] = Rat(1);
        CycloHalf col = *this * e;
        for (int i = 0; i < n; ++i) m[i][j] = col.c_[i];
    }
    m[0][n] = Rat(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!m[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) throw std::domain_error("CycloHalf: element is not invertible");
        std::swap(m[piv], m[col]);
        Rat s = m[col][col].inv();
        for (int k = col; k <= n; ++k) m[col][k] *= s;
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rat f = m[r][col];
            for (int k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
        }
    }
    CycloHalf out = from_rat(ell_, q_, Rat(0));
    for (int i = 0; i < n; ++i) out.c_[i] = m[i][n];
    return out;
}

CycloHalf CycloHalf::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    CycloHalf r(1), b(*this);
    if (ell_ != 0) r.promote(ell_, q_);
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

CycloHalf CycloHalf::conj() const {
    if (ell_ == 0) return *this;
    Raw raw = raw_zero(ell_);
    for (int a = 0; a + 1 < ell_; ++a)
        for (int b = 0; b < 2; ++b) raw[(ell_ - a) % ell_][b] += c_[2 * a + b];
    CycloHalf r = *this;
    r.c_ = fold(ell_, q_, raw);
    return r;
}

CycloHalf CycloHalf::adams(int k) const {
    if (k < 1) throw std::invalid_argument("adams: k must be >= 1");
    if (ell_ == 0) return *this;
    long kk = k;
    while (kk % ell_ == 0) kk /= ell_;
    Raw raw = raw_zero(ell_);
    for (int a = 0; a + 1 < ell_; ++a)
        for (int b = 0; b < 2; ++b) raw[(a * kk) % ell_][b] += c_[2 * a + b];
    CycloHalf r = *this;
    r.c_ = fold(ell_, q_, raw);
    return r;
}

std::string CycloHalf::str() const {
    std::ostringstream os;
    bool first = true;
    int amax = ell_ == 0 ? 0 : ell_ - 2;
    for (int a = 0; a <= amax; ++a)
        for (int b = 0; b < 2; ++b) {
            const Rat& c = coeff(a, b);
            if (c.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << c.str() << "*z^" << a << "*u^" << b;
        }
    if (first) return "0";
    return os.str();
}

std::complex<long double> CycloHalf::embed(int precision_bits) const {
    const mpfr_prec_t prec = precision_bits + 32;
    mpfr_t re, im, pi, ang, cs, sn, sq, t;
    for (auto* v : {&re, &im, &pi, &ang, &cs, &sn, &sq, &t}) mpfr_init2(*v, prec);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_si(sq, q_ == 0 ? 1 : q_, MPFR_RNDN);
    mpfr_sqrt(sq, sq, MPFR_RNDN);
    int amax = ell_ == 0 ? 0 : ell_ - 2;
    for (int a = 0; a <= amax; ++a)
        for (int b = 0; b < 2; ++b) {
            const Rat& c = coeff(a, b);
            if (c.is_zero()) continue;
            // angle = 2 pi a / ell
            mpfr_mul_si(ang, pi, 2 * a, MPFR_RNDN);
            if (ell_ != 0) mpfr_div_si(ang, ang, ell_, MPFR_RNDN);
            mpfr_sin_cos(sn, cs, ang, MPFR_RNDN);
            mpfr_set_q(t, c.raw().get_mpq_t(), MPFR_RNDN);
            if (b) mpfr_mul(t, t, sq, MPFR_RNDN);
            mpfr_mul(cs, cs, t, MPFR_RNDN);
            mpfr_mul(sn, sn, t, MPFR_RNDN);
            mpfr_add(re, re, cs, MPFR_RNDN);
            mpfr_add(im, im, sn, MPFR_RNDN);
        }
    std::complex<long double> out(mpfr_get_ld(re, MPFR_RNDN), mpfr_get_ld(im, MPFR_RNDN));
    for (auto* v : {&re, &im, &pi, &ang, &cs, &sn, &sq, &t}) mpfr_clear(*v);
    return out;
}

std::complex<long double> embed_complex(const CycloHalf& x, int precision_bits) {
    if (precision_bits <= 0) throw std::invalid_argument("embed_complex: precision must be positive");
    return x.embed(precision_bits);
}

} // namespace lp
