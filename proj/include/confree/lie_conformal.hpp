#pragma once

#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "confree/rewrite.hpp"
#include "confree/terms.hpp"

namespace confree {

/// Rewriting rules for the universal enveloping algebra of the coefficient
/// Lie algebra with constant locality N. A rule exists for the pair
/// b(n) a(m) exactly when n-m > N, or n-m = N and (b > a, or b = a with N
/// odd). The equal-letter rule at gap N halves the correction range because
/// the relation's terms pair up for odd N.
RuleSet lie_ruleset(const Alphabet& alphabet, Index locality);

/// Free Lie conformal algebra context with constant locality N >= 0.
struct LieConfContext {
    Alphabet alphabet;
    Index locality;
    RuleSet rules;

    static LieConfContext make(Alphabet alphabet, Index locality);
};

/// Adjacent index-gap condition for basis words; equals
/// is_terminal(w, ctx.rules).
bool is_basis_word_UL(const Word& w, const LieConfContext& ctx);

/// All basis words of U(L) of the given length with indices in [lo, hi]
/// (and index sum `sum` when given), in decreasing order.
std::vector<Word> enum_basis_UL(const LieConfContext& ctx, int length, Index lo, Index hi,
                                std::optional<Index> sum = std::nullopt);

/// Basis words of U(L+): all indices >= 0, fixed index sum. Finite without a
/// window since indices are bounded by the sum.
std::vector<Word> enum_basis_ULplus(const LieConfContext& ctx, int length, Index sum);

/// Element of the free vertex algebra V: a finitely supported rational
/// combination of terminal words with negative rightmost index, applied to
/// the vacuum. The empty word is the vacuum itself.
class VertexVector {
public:
    using TermMap = std::map<Word, Rational, WordKeyLess>;

    VertexVector() = default;
    static VertexVector vacuum() { return term(Word(), Rational(1)); }
    static VertexVector term(Word w, Rational c);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    Rational coeff(const Word& w) const;

    void add_term(const Word& w, const Rational& c);

    VertexVector& operator+=(const VertexVector& o);
    VertexVector& operator-=(const VertexVector& o);
    VertexVector& operator*=(const Rational& c);
    friend VertexVector operator+(VertexVector a, const VertexVector& b) { a += b; return a; }
    friend VertexVector operator-(VertexVector a, const VertexVector& b) { a -= b; return a; }
    friend VertexVector operator*(const Rational& c, VertexVector v) { v *= c; return v; }
    VertexVector operator-() const;

    friend bool operator==(const VertexVector&, const VertexVector&) = default;

private:
    TermMap terms_;
};

/// True iff w is terminal and its rightmost index is negative (or w is
/// empty).
bool is_vertex_word(const Word& w, const LieConfContext& ctx);

/// Checks every invariant of a vertex vector's support.
bool is_valid_vertex_vector(const VertexVector& v, const LieConfContext& ctx);

/// Weight grading: -(index sum); the vacuum has weight 0.
Index vertex_weight(const Word& w);

/// Reduce, then delete every terminal word whose rightmost index is >= 0.
/// The empty word maps to the vacuum.
VertexVector project_to_V(const NcPoly& p, const LieConfContext& ctx);

/// Left action of the generator g on V.
VertexVector act(const Generator& g, const VertexVector& v, const LieConfContext& ctx);

/// The derivation D of V: Leibniz sum of single-index lowerings, with
/// D(vacuum) = 0.
VertexVector apply_D(const VertexVector& v, const LieConfContext& ctx);

/// Embedding of a generator symbol: the basis vector a(-1) applied to the
/// vacuum.
VertexVector psi(Letter letter, const LieConfContext& ctx);

json vertex_to_json(const VertexVector& v, const Alphabet& alphabet);
VertexVector vertex_from_json(const json& j, const LieConfContext& ctx);

std::ostream& operator<<(std::ostream& os, const VertexVector& v);

}  // namespace confree
