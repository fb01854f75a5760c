#include "confree/series_oracle.hpp"

#include <algorithm>
#include <cctype>

namespace confree {

QPoly::QPoly(Rational constant)
{
    if (!constant.is_zero()) c_.push_back(std::move(constant));
}

QPoly QPoly::t() { return monomial(Rational(1), 1); }

QPoly QPoly::monomial(Rational coeff, int degree)
{
    if (degree < 0) throw ArgumentError("QPoly: negative degree");
    QPoly p;
    if (coeff.is_zero()) return p;
    p.c_.assign(static_cast<std::size_t>(degree) + 1, Rational(0));
    p.c_.back() = std::move(coeff);
    return p;
}

Rational QPoly::coeff(int i) const
{
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(i)];
}

void QPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QPoly& QPoly::operator+=(const QPoly& o)
{
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o)
{
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator*=(const Rational& r)
{
    if (r.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= r;
    return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b)
{
    QPoly out;
    if (a.is_zero() || b.is_zero()) return out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    out.trim();
    return out;
}

QPoly QPoly::operator-() const
{
    QPoly out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
}

QPoly QPoly::derivative() const
{
    QPoly out;
    if (c_.size() <= 1) return out;
    out.c_.assign(c_.size() - 1, Rational(0));
    for (std::size_t i = 1; i < c_.size(); ++i)
        out.c_[i - 1] = Rational(static_cast<long>(i)) * c_[i];
    out.trim();
    return out;
}

QPoly QPoly::derivative(int times) const
{
    QPoly out = *this;
    for (int i = 0; i < times; ++i) out = out.derivative();
    return out;
}

std::string QPoly::str() const
{
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeff(i);
        if (c.is_zero()) continue;
        Rational mag = c.sign() < 0 ? -c : c;
        if (out.empty()) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        bool unit = mag == Rational(1);
        if (!unit || i == 0) out += mag.str();
        if (i > 0) {
            if (!unit) out += "*";
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

QPoly parse_qpoly(const std::string& text)
{
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto parse_digits = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw ParseError("expected digits", pos);
        return text.substr(start, pos - start);
    };

    QPoly out;
    skip_ws();
    bool first = true;
    while (pos < text.size()) {
        int sign = 1;
        skip_ws();
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw ParseError("expected '+' or '-'", pos);
        }
        skip_ws();
        Rational coeff(1);
        bool saw_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::string num = parse_digits();
            std::string den;
            skip_ws();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                skip_ws();
                den = parse_digits();
            }
            coeff = Rational::from_string(den.empty() ? num : num + "/" + den);
            saw_coeff = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
        }
        int deg = 0;
        if (pos < text.size() && text[pos] == 't') {
            ++pos;
            deg = 1;
            skip_ws();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip_ws();
                deg = std::stoi(parse_digits());
            }
        } else if (!saw_coeff) {
            throw ParseError("expected coefficient or 't'", pos);
        }
        if (sign < 0) coeff = -coeff;
        out += QPoly::monomial(coeff, deg);
        skip_ws();
        first = false;
    }
    if (first) throw ParseError("empty polynomial", pos);
    return out;
}

DiffOp DiffOp::term(QPoly a, Index delta_power)
{
    DiffOp out;
    if (!a.is_zero()) out.parts_.emplace(delta_power, std::move(a));
    return out;
}

QPoly DiffOp::coeff(Index delta_power) const
{
    auto it = parts_.find(delta_power);
    return it == parts_.end() ? QPoly() : it->second;
}

DiffOp& DiffOp::operator+=(const DiffOp& o)
{
    for (const auto& [k, a] : o.parts_) {
        auto [it, inserted] = parts_.emplace(k, a);
        if (!inserted) {
            it->second += a;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o)
{
    DiffOp neg = o;
    neg *= Rational(-1);
    return *this += neg;
}

DiffOp& DiffOp::operator*=(const Rational& r)
{
    if (r.is_zero()) {
        parts_.clear();
        return *this;
    }
    for (auto& [k, a] : parts_) a *= r;
    return *this;
}

std::string DiffOp::str() const
{
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [k, a] : parts_) {
        if (!out.empty()) out += " + ";
        out += "(" + a.str() + ")";
        if (k != 0) out += "*d^" + std::to_string(k);
    }
    return out;
}

DiffOp diffop_mul(const DiffOp& x, const DiffOp& y)
{
    DiffOp out;
    for (const auto& [k, a] : x.parts()) {
        for (const auto& [l, b] : y.parts()) {
            for (int i = 0; i <= b.degree(); ++i) {
                Rational c = gen_binom(k, i);
                if (c.is_zero()) continue;
                QPoly piece = a * b.derivative(i);
                piece *= c;
                out += DiffOp::term(std::move(piece), k + l - i);
            }
        }
    }
    return out;
}

DiffOp diffop_bracket(const DiffOp& x, const DiffOp& y)
{
    return diffop_mul(x, y) - diffop_mul(y, x);
}

LoopAlgebra LoopAlgebra::from_json(const json& j)
{
    LoopAlgebra g;
    const auto& basis = j.at("basis");
    if (!basis.is_array() || basis.empty()) throw ArgumentError("structure JSON: bad basis");
    for (const auto& b : basis) g.names_.push_back(b.get<std::string>());
    if (j.contains("dim") && j.at("dim").get<int>() != g.dim())
        throw ArgumentError("structure JSON: dim does not match basis size");

    const int d = g.dim();
    g.table_.assign(static_cast<std::size_t>(d * d), Vec(static_cast<std::size_t>(d), Rational(0)));
    auto read_coeff = [](const json& v) {
        if (v.is_string()) return Rational::from_string(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        throw ArgumentError("structure JSON: bracket coefficients must be integers or strings");
    };
    if (j.contains("brackets")) {
        for (const auto& [key, value] : j.at("brackets").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw ArgumentError("structure JSON: bracket key must be 'x,y'");
            int a = g.basis_index(key.substr(0, comma));
            int b = g.basis_index(key.substr(comma + 1));
            Vec v(static_cast<std::size_t>(d), Rational(0));
            for (const auto& [target, coeff] : value.items())
                v[static_cast<std::size_t>(g.basis_index(target))] = read_coeff(coeff);
            g.table_[static_cast<std::size_t>(a * d + b)] = v;
            // fill the transpose antisymmetrically; explicit entries win
            if (!j.at("brackets").contains(key.substr(comma + 1) + "," + key.substr(0, comma))) {
                Vec neg = v;
                for (auto& c : neg) c = -c;
                g.table_[static_cast<std::size_t>(b * d + a)] = neg;
            }
        }
    }

    g.period_ = j.contains("p") ? j.at("p").get<int>() : 1;
    if (g.period_ != 1 && g.period_ != 2)
        throw ArgumentError("structure JSON: automorphism order p must be 1 or 2");
    g.grades_.assign(static_cast<std::size_t>(d), 0);
    if (g.period_ == 2) {
        if (!j.contains("grades")) throw ArgumentError("structure JSON: p=2 needs grades");
        for (const auto& [name, grade] : j.at("grades").items()) {
            int idx = g.basis_index(name);
            int gr = grade.get<int>();
            if (gr != 0 && gr != 1) throw ArgumentError("structure JSON: grades must be 0 or 1");
            g.grades_[static_cast<std::size_t>(idx)] = gr;
        }
    }

    g.validate();
    return g;
}

LoopAlgebra LoopAlgebra::sl2()
{
    return from_json(json{{"basis", {"e", "h", "f"}},
                          {"brackets",
                           {{"e,f", {{"h", 1}}}, {"h,e", {{"e", 2}}}, {"h,f", {{"f", -2}}}}}});
}

LoopAlgebra LoopAlgebra::sl2_twisted()
{
    return from_json(json{{"basis", {"e", "h", "f"}},
                          {"brackets",
                           {{"e,f", {{"h", 1}}}, {"h,e", {{"e", 2}}}, {"h,f", {{"f", -2}}}}},
                          {"p", 2},
                          {"grades", {{"e", 1}, {"h", 0}, {"f", 1}}}});
}

int LoopAlgebra::basis_index(const std::string& name) const
{
    for (int i = 0; i < dim(); ++i)
        if (names_[static_cast<std::size_t>(i)] == name) return i;
    throw ArgumentError("unknown basis element '" + name + "'");
}

LoopAlgebra::Vec LoopAlgebra::basis_vec(int i) const
{
    Vec v(static_cast<std::size_t>(dim()), Rational(0));
    v.at(static_cast<std::size_t>(i)) = Rational(1);
    return v;
}

LoopAlgebra::Vec LoopAlgebra::bracket(const Vec& x, const Vec& y) const
{
    const int d = dim();
    if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d)
        throw ArgumentError("bracket: vector dimension mismatch");
    Vec out(static_cast<std::size_t>(d), Rational(0));
    for (int i = 0; i < d; ++i) {
        if (x[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < d; ++j) {
            if (y[static_cast<std::size_t>(j)].is_zero()) continue;
            const Vec& base = table_[static_cast<std::size_t>(i * d + j)];
            Rational c = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
            for (int k = 0; k < d; ++k)
                out[static_cast<std::size_t>(k)] += c * base[static_cast<std::size_t>(k)];
        }
    }
    return out;
}

int LoopAlgebra::vec_grade(const Vec& x) const
{
    if (period_ == 1) return 0;
    int grade = -1;
    for (int i = 0; i < dim(); ++i) {
        if (x[static_cast<std::size_t>(i)].is_zero()) continue;
        int gi = grades_[static_cast<std::size_t>(i)];
        if (grade == -1) grade = gi;
        else if (grade != gi)
            throw ArgumentError("vector is not homogeneous for the order-2 grading");
    }
    return grade == -1 ? 0 : grade;
}

void LoopAlgebra::validate() const
{
    const int d = dim();
    auto is_zero = [](const Vec& v) {
        return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c.is_zero(); });
    };
    // antisymmetry incl. [x,x] = 0
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Vec sum = table_[static_cast<std::size_t>(i * d + j)];
            const Vec& ji = table_[static_cast<std::size_t>(j * d + i)];
            for (int k = 0; k < d; ++k) sum[static_cast<std::size_t>(k)] += ji[static_cast<std::size_t>(k)];
            if (!is_zero(sum)) throw ArgumentError("structure constants are not antisymmetric");
        }
    // Jacobi on basis triples
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                Vec lhs = bracket(table_[static_cast<std::size_t>(i * d + j)], basis_vec(k));
                Vec r1 = bracket(basis_vec(i), table_[static_cast<std::size_t>(j * d + k)]);
                Vec r2 = bracket(basis_vec(j), table_[static_cast<std::size_t>(i * d + k)]);
                for (int s = 0; s < d; ++s)
                    lhs[static_cast<std::size_t>(s)] -=
                        r1[static_cast<std::size_t>(s)] - r2[static_cast<std::size_t>(s)];
                if (!is_zero(lhs)) throw ArgumentError("structure constants violate Jacobi");
            }
    // grading compatibility
    if (period_ == 2) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Vec& v = table_[static_cast<std::size_t>(i * d + j)];
                int expect = (grades_[static_cast<std::size_t>(i)] +
                              grades_[static_cast<std::size_t>(j)]) % 2;
                for (int k = 0; k < d; ++k)
                    if (!v[static_cast<std::size_t>(k)].is_zero() &&
                        grades_[static_cast<std::size_t>(k)] != expect)
                        throw ArgumentError("brackets do not respect the order-2 grading");
            }
    }
}

LoopElem LoopElem::term(LoopAlgebra::Vec v, Index t_power)
{
    LoopElem out;
    bool zero = std::all_of(v.begin(), v.end(), [](const Rational& c) { return c.is_zero(); });
    if (!zero) out.parts_.emplace(t_power, std::move(v));
    return out;
}

LoopElem& LoopElem::operator+=(const LoopElem& o)
{
    for (const auto& [t, v] : o.parts_) {
        auto it = parts_.find(t);
        if (it == parts_.end()) {
            parts_.emplace(t, v);
            continue;
        }
        bool zero = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            it->second[i] += v[i];
            if (!it->second[i].is_zero()) zero = false;
        }
        if (zero) parts_.erase(it);
    }
    return *this;
}

LoopElem& LoopElem::operator-=(const LoopElem& o)
{
    LoopElem neg = o;
    neg *= Rational(-1);
    return *this += neg;
}

LoopElem& LoopElem::operator*=(const Rational& r)
{
    if (r.is_zero()) {
        parts_.clear();
        return *this;
    }
    for (auto& [t, v] : parts_)
        for (auto& c : v) c *= r;
    return *this;
}

LoopElem loop_bracket(const LoopAlgebra& g, const LoopElem& x, const LoopElem& y)
{
    LoopElem out;
    for (const auto& [tx, vx] : x.parts())
        for (const auto& [ty, vy] : y.parts()) out += LoopElem::term(g.bracket(vx, vy), tx + ty);
    return out;
}

DiffSeries tilde_diff(const QPoly& a, Index lo, Index hi)
{
    if (lo > hi) throw ArgumentError("tilde_diff: empty window");
    DiffSeries out;
    out.lo = lo;
    out.hi = hi;
    for (Index n = lo; n <= hi; ++n) out.set(n, DiffOp::term(a, n));
    return out;
}

LoopSeries tilde_loop(const LoopAlgebra& g, const LoopAlgebra::Vec& a, Index lo, Index hi)
{
    if (lo > hi) throw ArgumentError("tilde_loop: empty window");
    const int p = g.period();
    const int k = g.vec_grade(a);  // throws for p=2 on non-homogeneous input
    LoopSeries out;
    out.lo = lo;
    out.hi = hi;
    for (Index j = lo; j <= hi; ++j) out.set(j, LoopElem::term(a, p * j + k));
    return out;
}

VirasoroReport virasoro_check(Index lo, Index hi, Index n_max)
{
    DiffLieAlgebra lie;
    DiffSeries u = tilde_diff(QPoly::t(), lo, hi);

    VirasoroReport report;
    report.product0 = series_equal(circle_pos(lie, u, 0, u), series_derivative(u));
    report.product1 = series_equal(circle_pos(lie, u, 1, u), series_scale(Rational(2), u));
    for (Index n = 2; n <= n_max; ++n)
        if (!circle_pos(lie, u, n, u).is_zero_on_window()) report.failed_zero.push_back(n);
    report.ok = report.product0 && report.product1 && report.failed_zero.empty();
    return report;
}

bool check_diffass(const QPoly& a, const QPoly& b, Index n, Index lo, Index hi)
{
    if (n < 0) throw ArgumentError("check_diffass: n must be non-negative");
    DiffAssocAlgebra assoc;
    auto lhs = circle_pos(assoc, tilde_diff(a, lo, hi), n, tilde_diff(b, lo, hi));
    auto rhs = tilde_diff(a * b.derivative(static_cast<int>(n)), lo, hi);
    return series_equal(lhs, rhs);
}

bool check_difflie(const QPoly& a, const QPoly& b, Index n, Index lo, Index hi)
{
    if (n < 0) throw ArgumentError("check_difflie: n must be non-negative");
    DiffLieAlgebra lie;
    auto lhs = circle_pos(lie, tilde_diff(a, lo, hi), n, tilde_diff(b, lo, hi));

    DiffSeries rhs = tilde_diff(a * b.derivative(static_cast<int>(n)), lo, hi);
    Rational fac(1);
    for (Index s = 0;; ++s) {
        if (s > 0) fac *= Rational(s);
        QPoly da = a.derivative(static_cast<int>(n + s));
        if (da.is_zero()) break;
        auto term = tilde_diff(b * da, lo, hi);
        for (Index i = 0; i < s; ++i) term = series_derivative(term);
        Rational c = Rational(1) / fac;
        if (((n + s) % 2 + 2) % 2 == 1) c = -c;
        rhs = series_sub(rhs, series_scale(c, term));
    }
    return series_equal(lhs, rhs);
}

}  // namespace confree
