#include "confree/lie_conformal.hpp"

#include <algorithm>
#include <ostream>

#include "confree/errors.hpp"
#include "confree/io.hpp"

namespace confree {

namespace {

// Largest allowed index gap for the adjacent pair (left, right):
// the word is terminal iff left.index - right.index <= bound.
Index adjacent_gap_bound(const Generator& left, const Generator& right, Index locality)
{
    bool tight = left.letter.rank > right.letter.rank ||
                 (left.letter == right.letter && locality % 2 == 1);
    return tight ? locality - 1 : locality;
}

}  // namespace

RuleSet lie_ruleset(const Alphabet& alphabet, Index locality)
{
    if (locality < 0) throw ArgumentError("lie_ruleset: locality must be non-negative");
    const Index N = locality;
    const int nletters = alphabet.size();

    auto query = [N, nletters](const Generator& left, const Generator& right) -> std::optional<Rule> {
        if (left.letter.rank >= nletters || right.letter.rank >= nletters ||
            left.letter.rank < 0 || right.letter.rank < 0)
            throw ArgumentError("generator letter outside the declared alphabet");
        const Index gap = left.index - right.index;
        if (gap <= adjacent_gap_bound(left, right, N)) return std::nullopt;

        const bool halved = left.letter == right.letter && gap == N;  // odd N, paired terms
        const Index s_max = halved ? (N - 1) / 2 : N;

        Rule rule;
        rule.principal = Word({left, right});
        rule.replacement = NcPoly::term(Word({right, left}), Rational(1));
        for (Index s = 1; s <= s_max; ++s) {
            // - (-1)^s binom(N,s) [left(n-s), right(m+s)], commutator expanded
            Rational c = gen_binom(N, s);
            if (s % 2 == 0) c = -c;
            Generator x{left.letter, left.index - s};
            Generator y{right.letter, right.index + s};
            rule.replacement.add_term(Word({x, y}), c);
            rule.replacement.add_term(Word({y, x}), -c);
        }
        return rule;
    };

    return RuleSet(std::move(query), kLieOrder,
                   "lie(N=" + std::to_string(locality) + ")");
}

LieConfContext LieConfContext::make(Alphabet alphabet, Index locality)
{
    RuleSet rules = lie_ruleset(alphabet, locality);
    return LieConfContext{std::move(alphabet), locality, std::move(rules)};
}

bool is_basis_word_UL(const Word& w, const LieConfContext& ctx)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].index - w[i + 1].index > adjacent_gap_bound(w[i], w[i + 1], ctx.locality)) return false;
    return true;
}

namespace {

void enum_words_rec(const LieConfContext& ctx, int remaining, Index lo, Index hi,
                    std::optional<Index> sum, Index partial_sum, Word& current,
                    std::vector<Word>& out)
{
    if (remaining == 0) {
        if (!sum || partial_sum == *sum) out.push_back(current);
        return;
    }
    if (sum) {
        // each remaining index lies in [lo, hi]
        Index rest = static_cast<Index>(remaining);
        Index min_rest = partial_sum + rest * lo;
        Index max_rest = partial_sum + rest * hi;
        if (*sum < min_rest || *sum > max_rest) return;
    }
    for (Letter l : ctx.alphabet.letters()) {
        for (Index n = lo; n <= hi; ++n) {
            Generator g{l, n};
            if (!current.empty()) {
                const Generator& prev = current.gens.back();
                if (prev.index - n > adjacent_gap_bound(prev, g, ctx.locality)) continue;
            }
            current.gens.push_back(g);
            enum_words_rec(ctx, remaining - 1, lo, hi, sum, partial_sum + n, current, out);
            current.gens.pop_back();
        }
    }
}

}  // namespace

std::vector<Word> enum_basis_UL(const LieConfContext& ctx, int length, Index lo, Index hi,
                                std::optional<Index> sum)
{
    if (length < 0) throw ArgumentError("enum_basis_UL: negative length");
    if (lo > hi) throw ArgumentError("enum_basis_UL: empty index window");
    std::vector<Word> out;
    Word current;
    enum_words_rec(ctx, length, lo, hi, sum, 0, current, out);
    std::sort(out.begin(), out.end(),
              [&](const Word& x, const Word& y) { return compare_words(x, y, kLieOrder) > 0; });
    return out;
}

std::vector<Word> enum_basis_ULplus(const LieConfContext& ctx, int length, Index sum)
{
    if (length < 0) throw ArgumentError("enum_basis_ULplus: negative length");
    if (sum < 0) throw ArgumentError("enum_basis_ULplus: negative index sum");
    // all indices are >= 0 and bounded by the sum
    return enum_basis_UL(ctx, length, 0, sum, sum);
}

VertexVector VertexVector::term(Word w, Rational c)
{
    VertexVector v;
    if (!c.is_zero()) v.terms_.emplace(std::move(w), std::move(c));
    return v;
}

Rational VertexVector::coeff(const Word& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void VertexVector::add_term(const Word& w, const Rational& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

VertexVector& VertexVector::operator+=(const VertexVector& o)
{
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

VertexVector& VertexVector::operator-=(const VertexVector& o)
{
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

VertexVector& VertexVector::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    return *this;
}

VertexVector VertexVector::operator-() const
{
    VertexVector out;
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

bool is_vertex_word(const Word& w, const LieConfContext& ctx)
{
    if (w.empty()) return true;
    if (w.gens.back().index >= 0) return false;
    return is_basis_word_UL(w, ctx);
}

bool is_valid_vertex_vector(const VertexVector& v, const LieConfContext& ctx)
{
    for (const auto& [w, c] : v.terms()) {
        if (c.is_zero()) return false;
        if (!is_vertex_word(w, ctx)) return false;
    }
    return true;
}

Index vertex_weight(const Word& w) { return -w.index_sum(); }

VertexVector project_to_V(const NcPoly& p, const LieConfContext& ctx)
{
    NcPoly reduced = reduce_poly(p, ctx.rules);
    VertexVector out;
    for (const auto& [w, c] : reduced.terms()) {
        if (!w.empty() && w.gens.back().index >= 0) continue;
        out.add_term(w, c);
    }
    return out;
}

VertexVector act(const Generator& g, const VertexVector& v, const LieConfContext& ctx)
{
    NcPoly lifted;
    for (const auto& [w, c] : v.terms()) lifted.add_term(Word::single(g) * w, c);
    return project_to_V(lifted, ctx);
}

VertexVector apply_D(const VertexVector& v, const LieConfContext& ctx)
{
    NcPoly lifted;
    for (const auto& [w, c] : v.terms()) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            Word lowered = w;
            lowered.gens[i].index -= 1;
            lifted.add_term(lowered, Rational(-w[i].index) * c);
        }
    }
    return project_to_V(lifted, ctx);
}

VertexVector psi(Letter letter, const LieConfContext& ctx)
{
    if (letter.rank < 0 || letter.rank >= ctx.alphabet.size())
        throw ArgumentError("psi: letter outside the alphabet");
    return VertexVector::term(Word::single(Generator{letter, -1}), Rational(1));
}

json vertex_to_json(const VertexVector& v, const Alphabet& alphabet)
{
    json arr = json::array();
    // descending in the lie order, vacuum last
    std::vector<const VertexVector::TermMap::value_type*> terms;
    terms.reserve(v.term_count());
    for (const auto& t : v.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) {
        return compare_words(a->first, b->first, kLieOrder) > 0;
    });
    for (const auto* t : terms)
        arr.push_back({{"coeff", t->second.str()}, {"word", word_to_json(t->first, alphabet)}});
    return arr;
}

VertexVector vertex_from_json(const json& j, const LieConfContext& ctx)
{
    if (!j.is_array()) throw ArgumentError("vertex vector JSON must be an array");
    VertexVector v;
    for (const auto& e : j) {
        Word w = word_from_json(e.at("word"), ctx.alphabet);
        if (!is_vertex_word(w, ctx))
            throw ArgumentError("vertex vector JSON contains a non-basis word");
        v.add_term(w, Rational::from_string(e.at("coeff").get<std::string>()));
    }
    return v;
}

std::ostream& operator<<(std::ostream& os, const VertexVector& v)
{
    if (v.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [w, c] : v.terms()) {
        if (!first) os << " + ";
        os << c.str() << '*' << w << "|1>";
        first = false;
    }
    return os;
}

}  // namespace confree
