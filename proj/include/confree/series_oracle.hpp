#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "confree/errors.hpp"
#include "confree/rational.hpp"
#include "confree/terms.hpp"

namespace confree {

using nlohmann::json;

/// Polynomial in t over the rationals.
class QPoly {
public:
    QPoly() = default;
    QPoly(Rational constant);  // NOLINT: implicit, scalars promote freely
    static QPoly t();
    static QPoly monomial(Rational coeff, int degree);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    Rational coeff(int i) const;

    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly& operator*=(const Rational& r);
    friend QPoly operator+(QPoly a, const QPoly& b) { a += b; return a; }
    friend QPoly operator-(QPoly a, const QPoly& b) { a -= b; return a; }
    friend QPoly operator*(const Rational& r, QPoly p) { p *= r; return p; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly operator-() const;

    /// d/dt.
    QPoly derivative() const;
    QPoly derivative(int times) const;

    friend bool operator==(const QPoly&, const QPoly&) = default;
    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;  // c_[i] * t^i, no trailing zeros
};

/// `t`, `t^3`, `2*t^2 - 1/2*t + 1`.
QPoly parse_qpoly(const std::string& text);

/// Element of the localized differential-operator ring over Q[t] with
/// delta = d/dt: a finite sum of a_k delta^k, k ranging over all integers.
class DiffOp {
public:
    DiffOp() = default;
    static DiffOp term(QPoly a, Index delta_power);

    bool is_zero() const { return parts_.empty(); }
    const std::map<Index, QPoly>& parts() const { return parts_; }
    QPoly coeff(Index delta_power) const;

    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    DiffOp& operator*=(const Rational& r);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { a += b; return a; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { a -= b; return a; }
    friend DiffOp operator*(const Rational& r, DiffOp x) { x *= r; return x; }

    friend bool operator==(const DiffOp&, const DiffOp&) = default;
    std::string str() const;

private:
    std::map<Index, QPoly> parts_;  // delta power -> coefficient
};

/// a delta^k . b delta^l = sum_i binom(k,i) a delta^i(b) delta^(k+l-i).
DiffOp diffop_mul(const DiffOp& x, const DiffOp& y);
DiffOp diffop_bracket(const DiffOp& x, const DiffOp& y);

/// Finite-dimensional Lie algebra given by structure constants, with an
/// optional order-2 grading for twisted loop constructions. Validated for
/// antisymmetry, the Jacobi identity, and grading compatibility on load.
class LoopAlgebra {
public:
    using Vec = std::vector<Rational>;

    /// {"dim": 3, "basis": ["e","h","f"],
    ///  "brackets": {"e,f": {"h": 1}, "h,e": {"e": 2}, "h,f": {"f": -2}},
    ///  "p": 2, "grades": {"e": 1, "h": 0, "f": 1}}   (p/grades optional)
    static LoopAlgebra from_json(const json& j);
    static LoopAlgebra sl2();
    static LoopAlgebra sl2_twisted();  // Cartan involution grading, p = 2

    int dim() const { return static_cast<int>(names_.size()); }
    const std::string& basis_name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    int basis_index(const std::string& name) const;
    int period() const { return period_; }
    int grade(int basis_idx) const { return grades_[static_cast<std::size_t>(basis_idx)]; }

    Vec basis_vec(int i) const;
    Vec bracket(const Vec& x, const Vec& y) const;
    /// Grade of a homogeneous vector; throws for p = 2 when mixed.
    int vec_grade(const Vec& x) const;

private:
    void validate() const;
    std::vector<std::string> names_;
    std::vector<Vec> table_;  // [i*dim+j] -> coordinates of [e_i, e_j]
    std::vector<int> grades_;
    int period_ = 1;
};

/// Element of the (twisted) loop algebra: a finite sum of g-vectors tensored
/// with powers of t.
class LoopElem {
public:
    LoopElem() = default;
    static LoopElem term(LoopAlgebra::Vec v, Index t_power);

    bool is_zero() const { return parts_.empty(); }
    const std::map<Index, LoopAlgebra::Vec>& parts() const { return parts_; }

    LoopElem& operator+=(const LoopElem& o);
    LoopElem& operator-=(const LoopElem& o);
    LoopElem& operator*=(const Rational& r);
    friend LoopElem operator+(LoopElem a, const LoopElem& b) { a += b; return a; }
    friend LoopElem operator-(LoopElem a, const LoopElem& b) { a -= b; return a; }
    friend LoopElem operator*(const Rational& r, LoopElem x) { x *= r; return x; }

    friend bool operator==(const LoopElem&, const LoopElem&) = default;

private:
    std::map<Index, LoopAlgebra::Vec> parts_;
};

LoopElem loop_bracket(const LoopAlgebra& g, const LoopElem& x, const LoopElem& y);

// Realizations: an element type plus the product the circle products use.

struct DiffAssocAlgebra {
    using Elem = DiffOp;
    static constexpr bool lie = false;
    static std::string name() { return "diff-assoc"; }
    Elem mul(const Elem& x, const Elem& y) const { return diffop_mul(x, y); }
};

struct DiffLieAlgebra {
    using Elem = DiffOp;
    static constexpr bool lie = true;
    static std::string name() { return "diff-lie"; }
    Elem mul(const Elem& x, const Elem& y) const { return diffop_bracket(x, y); }
};

struct LoopLieAlgebra {
    const LoopAlgebra* g = nullptr;
    using Elem = LoopElem;
    static constexpr bool lie = true;
    static std::string name() { return "loop"; }
    Elem mul(const Elem& x, const Elem& y) const { return loop_bracket(*g, x, y); }
};

/// Index-windowed formal distribution: coefficients are defined exactly on
/// [lo, hi] and nowhere else. Every operation records the shrunk window on
/// which its output is exact; no extrapolation ever happens.
template <class Elem>
struct TruncSeries {
    std::map<Index, Elem> coeffs;  // absent within the window means zero
    Index lo = 0;
    Index hi = -1;

    bool window_empty() const { return lo > hi; }

    Elem at(Index n) const
    {
        if (n < lo || n > hi)
            throw WindowError("series coefficient " + std::to_string(n) +
                              " outside the exact window [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
        auto it = coeffs.find(n);
        return it == coeffs.end() ? Elem{} : it->second;
    }

    void set(Index n, Elem e)
    {
        if (!e.is_zero()) coeffs[n] = std::move(e);
    }

    bool is_zero_on_window() const
    {
        for (const auto& [n, e] : coeffs)
            if (n >= lo && n <= hi && !e.is_zero()) return false;
        return true;
    }
};

using DiffSeries = TruncSeries<DiffOp>;
using LoopSeries = TruncSeries<LoopElem>;

/// Generating series of a ring element: coefficient a delta^n at every n.
DiffSeries tilde_diff(const QPoly& a, Index lo, Index hi);

/// Twisted generating series of a homogeneous element of grade k:
/// coefficient a (x) t^(p j + k) at index j. Throws for p = 2 when the
/// vector is not homogeneous.
LoopSeries tilde_loop(const LoopAlgebra& g, const LoopAlgebra::Vec& a, Index lo, Index hi);

// ---- generic series operations ----

template <class Elem>
TruncSeries<Elem> series_add(const TruncSeries<Elem>& x, const TruncSeries<Elem>& y)
{
    TruncSeries<Elem> out;
    out.lo = std::max(x.lo, y.lo);
    out.hi = std::min(x.hi, y.hi);
    for (Index n = out.lo; n <= out.hi; ++n) out.set(n, x.at(n) + y.at(n));
    return out;
}

template <class Elem>
TruncSeries<Elem> series_scale(const Rational& c, const TruncSeries<Elem>& x)
{
    TruncSeries<Elem> out;
    out.lo = x.lo;
    out.hi = x.hi;
    for (Index n = out.lo; n <= out.hi; ++n) out.set(n, c * x.at(n));
    return out;
}

template <class Elem>
TruncSeries<Elem> series_sub(const TruncSeries<Elem>& x, const TruncSeries<Elem>& y)
{
    return series_add(x, series_scale(Rational(-1), y));
}

/// d/dz: (dx)(m) = -m x(m-1).
template <class Elem>
TruncSeries<Elem> series_derivative(const TruncSeries<Elem>& x)
{
    TruncSeries<Elem> out;
    out.lo = x.lo + 1;
    out.hi = x.hi + 1;
    for (Index m = out.lo; m <= out.hi; ++m) out.set(m, Rational(-m) * x.at(m - 1));
    return out;
}

/// Multiplication by z: (zx)(m) = x(m+1).
template <class Elem>
TruncSeries<Elem> series_shift_z(const TruncSeries<Elem>& x)
{
    TruncSeries<Elem> out;
    out.lo = x.lo - 1;
    out.hi = x.hi - 1;
    for (Index m = out.lo; m <= out.hi; ++m) out.set(m, x.at(m + 1));
    return out;
}

/// Exact equality on the overlap of the two windows; an empty overlap is a
/// window error since nothing can be compared.
template <class Elem>
bool series_equal(const TruncSeries<Elem>& x, const TruncSeries<Elem>& y)
{
    Index lo = std::max(x.lo, y.lo);
    Index hi = std::min(x.hi, y.hi);
    if (lo > hi) throw WindowError("series windows do not overlap");
    for (Index n = lo; n <= hi; ++n)
        if (!(x.at(n) == y.at(n))) return false;
    return true;
}

/// One coefficient of the n-th circle product, n >= 0:
/// (x o{n} y)(m) = sum_{s=0}^n (-1)^s binom(n,s) x(n-s) y(m+s).
template <class A>
typename A::Elem circle_coeff(const A& algebra, const TruncSeries<typename A::Elem>& x, Index n,
                              const TruncSeries<typename A::Elem>& y, Index m)
{
    if (n < 0) throw ArgumentError("circle products need n >= 0");
    typename A::Elem out{};
    for (Index s = 0; s <= n; ++s) {
        Rational c = gen_binom(n, s);
        if (s % 2 == 1) c = -c;
        out += c * algebra.mul(x.at(n - s), y.at(m + s));
    }
    return out;
}

template <class A>
TruncSeries<typename A::Elem> circle_pos(const A& algebra,
                                         const TruncSeries<typename A::Elem>& x, Index n,
                                         const TruncSeries<typename A::Elem>& y)
{
    if (n < 0) throw ArgumentError("circle products need n >= 0");
    if (x.lo > 0 || x.hi < n)
        throw WindowError("left series window does not cover [0, n]");
    TruncSeries<typename A::Elem> out;
    out.lo = y.lo;
    out.hi = y.hi - n;
    if (out.window_empty()) throw WindowError("circle product has an empty exact window");
    for (Index m = out.lo; m <= out.hi; ++m) out.set(m, circle_coeff(algebra, x, n, y, m));
    return out;
}

/// Smallest N <= n_max such that the order-N locality relation holds at
/// every testable coefficient pair; nullopt when none passes. Requires a
/// non-empty testable grid for each candidate N.
template <class A>
std::optional<Index> locality_order(const A& algebra, const TruncSeries<typename A::Elem>& x,
                                    const TruncSeries<typename A::Elem>& y, Index n_max)
{
    for (Index n = 0; n <= n_max; ++n) {
        Index m_lo = x.lo + n, m_hi = x.hi;
        Index k_lo = y.lo, k_hi = y.hi - n;
        if (m_lo > m_hi || k_lo > k_hi)
            throw WindowError("window too small to test locality order " + std::to_string(n));
        bool holds = true;
        for (Index m = m_lo; m <= m_hi && holds; ++m)
            for (Index k = k_lo; k <= k_hi && holds; ++k) {
                typename A::Elem sum{};
                for (Index s = 0; s <= n; ++s) {
                    Rational c = gen_binom(n, s);
                    if (s % 2 == 1) c = -c;
                    sum += c * algebra.mul(x.at(m - s), y.at(k + s));
                }
                if (!sum.is_zero()) holds = false;
            }
        if (holds) return n;
    }
    return std::nullopt;
}

/// x(k)y(l) recovered from the circle products: the triangular inverse for
/// k >= 0, and the locality-bounded form with the measured order.
template <class A>
bool check_reconstruction(const A& algebra, const TruncSeries<typename A::Elem>& x, Index k,
                          const TruncSeries<typename A::Elem>& y, Index l, Index n_max = 8)
{
    if (k < 0) throw ArgumentError("check_reconstruction needs k >= 0");
    typename A::Elem direct = algebra.mul(x.at(k), y.at(l));

    typename A::Elem rebuilt{};
    for (Index s = 0; s <= k; ++s)
        rebuilt += gen_binom(k, s) * circle_coeff(algebra, x, s, y, k + l - s);
    if (!(direct == rebuilt)) return false;

    auto order = locality_order(algebra, x, y, n_max);
    if (!order) return false;
    typename A::Elem bounded{};
    for (Index s = 0; s < *order; ++s)
        bounded += gen_binom(k, s) * circle_coeff(algebra, x, s, y, k + l - s);
    return direct == bounded;
}

/// Locality orders of composites against the third series respect the
/// stated estimates: in the Lie case
/// N(x o{n} y, z) <= N(x,y) + N(y,z) + N(z,x) - n - 1, and in the
/// associative case N(x o{n} y, z) <= N(y,z) and
/// N(z, x o{n} y) <= N(z,x) + N(x,y) - n - 1.
template <class A>
bool dong_bound_check(const A& algebra, const TruncSeries<typename A::Elem>& x,
                      const TruncSeries<typename A::Elem>& y,
                      const TruncSeries<typename A::Elem>& z, Index n, Index n_max = 10)
{
    auto nxy = locality_order(algebra, x, y, n_max);
    auto nyz = locality_order(algebra, y, z, n_max);
    auto nzx = locality_order(algebra, z, x, n_max);
    if (!nxy || !nyz || !nzx) throw WindowError("pairwise locality orders not measurable");
    if (n < 0 || n >= *nxy) throw ArgumentError("dong_bound_check needs 0 <= n < N(x,y)");

    auto u = circle_pos(algebra, x, n, y);
    if constexpr (A::lie) {
        Index bound = *nxy + *nyz + *nzx - n - 1;
        auto measured = locality_order(algebra, u, z, bound);
        return measured.has_value();
    } else {
        auto right = locality_order(algebra, u, z, *nyz);
        if (!right) return false;
        Index bound = *nzx + *nxy - n - 1;
        auto left = locality_order(algebra, z, u, bound);
        return left.has_value();
    }
}

// ---- identity checks on realizations ----

/// a~ o{n} b~ = (a delta^n(b))~ in the associative realization.
bool check_diffass(const QPoly& a, const QPoly& b, Index n, Index lo, Index hi);

/// a~ o{n} b~ = (a delta^n(b))~ - sum_s (-1)^(n+s)/s! d^s (b delta^(n+s)(a))~
/// in the Lie realization.
bool check_difflie(const QPoly& a, const QPoly& b, Index n, Index lo, Index hi);

/// (x o{n} y) o{m} z = sum_s (-1)^s binom(n,s) x o{n-s} (y o{m+s} z).
template <class A>
bool check_assconf(const A& algebra, const TruncSeries<typename A::Elem>& x, Index n,
                   const TruncSeries<typename A::Elem>& y, Index m,
                   const TruncSeries<typename A::Elem>& z)
{
    auto lhs = circle_pos(algebra, circle_pos(algebra, x, n, y), m, z);
    TruncSeries<typename A::Elem> rhs;
    bool first = true;
    for (Index s = 0; s <= n; ++s) {
        Rational c = gen_binom(n, s);
        if (s % 2 == 1) c = -c;
        auto term = series_scale(c, circle_pos(algebra, x, n - s, circle_pos(algebra, y, m + s, z)));
        rhs = first ? term : series_add(rhs, term);
        first = false;
    }
    return series_equal(lhs, rhs);
}

/// Conformal Jacobi: as check_assconf with both nestings subtracted.
template <class A>
bool check_jacconf(const A& algebra, const TruncSeries<typename A::Elem>& x, Index n,
                   const TruncSeries<typename A::Elem>& y, Index m,
                   const TruncSeries<typename A::Elem>& z)
{
    auto lhs = circle_pos(algebra, circle_pos(algebra, x, n, y), m, z);
    TruncSeries<typename A::Elem> rhs;
    bool first = true;
    for (Index s = 0; s <= n; ++s) {
        Rational c = gen_binom(n, s);
        if (s % 2 == 1) c = -c;
        auto term = series_sub(circle_pos(algebra, x, n - s, circle_pos(algebra, y, m + s, z)),
                               circle_pos(algebra, y, m + s, circle_pos(algebra, x, n - s, z)));
        rhs = first ? series_scale(c, term) : series_add(rhs, series_scale(c, term));
        first = false;
    }
    return series_equal(lhs, rhs);
}

/// Quasisymmetry with the sum truncated at the measured locality order of
/// (y, x): x o{n} y = sum_s (-1)^(n+s+1)/s! d^s (y o{n+s} x).
template <class A>
bool check_quasisym_series(const A& algebra, const TruncSeries<typename A::Elem>& x, Index n,
                           const TruncSeries<typename A::Elem>& y, Index n_max = 10)
{
    static_assert(A::lie, "quasisymmetry is a skew-commutativity statement");
    auto order = locality_order(algebra, y, x, n_max);
    if (!order) throw WindowError("locality order of (y, x) not measurable");

    auto lhs = circle_pos(algebra, x, n, y);
    TruncSeries<typename A::Elem> rhs;
    rhs.lo = lhs.lo;
    rhs.hi = lhs.hi;
    Rational fac(1);
    for (Index s = 0; n + s < *order; ++s) {
        if (s > 0) fac *= Rational(s);
        auto term = circle_pos(algebra, y, n + s, x);
        for (Index i = 0; i < s; ++i) term = series_derivative(term);
        Rational c = Rational(1) / fac;
        if (((n + s + 1) % 2 + 2) % 2 == 1) c = -c;
        rhs = series_add(rhs, series_scale(c, term));
    }
    return series_equal(lhs, rhs);
}

struct VirasoroReport {
    bool ok = false;
    bool product0 = false;           // u o{0} u = du
    bool product1 = false;           // u o{1} u = 2u
    std::vector<Index> failed_zero;  // n in [2, n_max] with u o{n} u != 0
};

/// The centerless Virasoro relations for the series of upsilon = t in the
/// Lie differential realization, coefficient-exact on the window.
VirasoroReport virasoro_check(Index lo, Index hi, Index n_max = 6);

}  // namespace confree
