#include "confree/hall_lyndon.hpp"

#include <algorithm>

#include "confree/errors.hpp"
#include "confree/io.hpp"
#include "confree/linalg.hpp"

namespace confree {

struct HallTree::Node {
    bool leaf;
    Generator gen;  // leaf payload
    std::shared_ptr<const Node> left, right;
};

HallTree HallTree::leaf(Generator g)
{
    auto n = std::make_shared<Node>();
    n->leaf = true;
    n->gen = g;
    return HallTree(std::move(n));
}

HallTree HallTree::node(HallTree left, HallTree right)
{
    auto n = std::make_shared<Node>();
    n->leaf = false;
    n->left = std::move(left.n_);
    n->right = std::move(right.n_);
    return HallTree(std::move(n));
}

bool HallTree::is_leaf() const { return n_->leaf; }

const Generator& HallTree::generator() const
{
    if (!n_->leaf) throw ArgumentError("HallTree: generator() on an inner node");
    return n_->gen;
}

HallTree HallTree::left() const
{
    if (n_->leaf) throw ArgumentError("HallTree: left() on a leaf");
    return HallTree(n_->left);
}

HallTree HallTree::right() const
{
    if (n_->leaf) throw ArgumentError("HallTree: right() on a leaf");
    return HallTree(n_->right);
}

bool operator==(const HallTree& a, const HallTree& b)
{
    if (a.n_ == b.n_) return true;
    if (a.n_->leaf != b.n_->leaf) return false;
    if (a.n_->leaf) return a.n_->gen == b.n_->gen;
    return HallTree(a.n_->left) == HallTree(b.n_->left) &&
           HallTree(a.n_->right) == HallTree(b.n_->right);
}

namespace {

Word suffix_of(const Word& w, std::size_t start)
{
    return Word(std::vector<Generator>(w.gens.begin() + static_cast<long>(start), w.gens.end()));
}

Word prefix_of(const Word& w, std::size_t len)
{
    return Word(std::vector<Generator>(w.gens.begin(), w.gens.begin() + static_cast<long>(len)));
}

}  // namespace

bool is_lyndon(const Word& w)
{
    if (w.empty()) throw ArgumentError("is_lyndon: empty word");
    for (std::size_t start = 1; start < w.size(); ++start)
        if (compare_words(w, suffix_of(w, start), kLyndonOrder) <= 0) return false;
    return true;
}

std::vector<Word> lyndon_factorize(const Word& w)
{
    if (w.empty()) throw ArgumentError("lyndon_factorize: empty word");
    std::vector<Word> factors;
    Word current = w;
    while (!is_lyndon(current)) {
        std::size_t best = 1;
        for (std::size_t start = 2; start < current.size(); ++start)
            if (compare_words(suffix_of(current, start), suffix_of(current, best), kLyndonOrder) > 0)
                best = start;
        factors.push_back(suffix_of(current, best));
        current = prefix_of(current, best);
    }
    factors.push_back(current);
    std::reverse(factors.begin(), factors.end());
    for (std::size_t i = 0; i + 1 < factors.size(); ++i)
        if (compare_words(factors[i], factors[i + 1], kLyndonOrder) > 0)
            throw InternalError("lyndon_factorize: factors not non-decreasing");
    return factors;
}

HallTree bracketing(const Word& w)
{
    if (!is_lyndon(w)) throw ArgumentError("bracketing: word is not Lyndon-Shirshov");
    if (w.size() == 1) return HallTree::leaf(w[0]);
    for (std::size_t start = 1; start < w.size(); ++start) {
        Word v = suffix_of(w, start);
        if (is_lyndon(v)) return HallTree::node(bracketing(prefix_of(w, start)), bracketing(v));
    }
    throw InternalError("bracketing: no Lyndon suffix found");  // unreachable: single letters are Lyndon
}

Word alpha(const HallTree& h)
{
    if (h.is_leaf()) return Word::single(h.generator());
    return alpha(h.left()) * alpha(h.right());
}

NcPoly lambda_expand(const HallTree& h)
{
    if (h.is_leaf()) return NcPoly::term(Word::single(h.generator()), Rational(1));
    return poly_commutator(lambda_expand(h.left()), lambda_expand(h.right()));
}

bool satisfies_hall_conditions(const HallTree& h)
{
    if (h.is_leaf()) return true;
    const HallTree left = h.left();
    const HallTree right = h.right();
    if (!satisfies_hall_conditions(left) || !satisfies_hall_conditions(right)) return false;
    if (compare_words(alpha(left), alpha(right), kLyndonOrder) <= 0) return false;
    if (!left.is_leaf()) {
        // ((x y) z) needs z >= y
        if (compare_words(alpha(right), alpha(left.right()), kLyndonOrder) < 0) return false;
    }
    return true;
}

namespace {

void all_words_rec(const Alphabet& alphabet, int remaining, Index lo, Index hi, Word& current,
                   const std::function<void(const Word&)>& sink)
{
    if (remaining == 0) {
        sink(current);
        return;
    }
    for (Letter l : alphabet.letters())
        for (Index n = lo; n <= hi; ++n) {
            current.gens.push_back(Generator{l, n});
            all_words_rec(alphabet, remaining - 1, lo, hi, current, sink);
            current.gens.pop_back();
        }
}

}  // namespace

std::vector<Word> terminal_lyndon_words(const LieConfContext& ctx, int length, Index lo, Index hi)
{
    if (length < 1) throw ArgumentError("terminal_lyndon_words: length must be >= 1");
    if (lo > hi) throw ArgumentError("terminal_lyndon_words: empty index window");
    std::vector<Word> out;
    Word current;
    all_words_rec(ctx.alphabet, length, lo, hi, current, [&](const Word& w) {
        if (is_basis_word_UL(w, ctx) && is_lyndon(w)) out.push_back(w);
    });
    std::sort(out.begin(), out.end(),
              [](const Word& x, const Word& y) { return compare_words(x, y, kLyndonOrder) > 0; });
    return out;
}

std::vector<NcPoly> basis_L(const LieConfContext& ctx, int max_length, Index lo, Index hi)
{
    if (max_length < 1) throw ArgumentError("basis_L: max_length must be >= 1");
    std::vector<NcPoly> out;
    for (int len = 1; len <= max_length; ++len)
        for (const auto& w : terminal_lyndon_words(ctx, len, lo, hi))
            out.push_back(reduce_poly(lambda_expand(bracketing(w)), ctx.rules));
    return out;
}

NcPoly hall_sequence_normal_form(const Word& key, const LieConfContext& ctx)
{
    if (key.empty()) return NcPoly::unit();
    NcPoly product = NcPoly::unit();
    for (const auto& factor : lyndon_factorize(key))
        product = product * lambda_expand(bracketing(factor));
    return reduce_poly(product, ctx.rules);
}

namespace {

using Decomposition = std::map<Word, Rational, WordKeyLess>;

const Decomposition& decompose_rec(const Word& w, const LieConfContext& ctx,
                                   std::map<Word, Decomposition, WordKeyLess>& memo)
{
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;

    Decomposition result;
    if (w.empty()) {
        result.emplace(Word(), Rational(1));
        return memo.emplace(w, std::move(result)).first->second;
    }

    NcPoly t = hall_sequence_normal_form(w, ctx);
    if (t.coeff(w) != Rational(1))
        throw InternalError("decompose_terminal: leading coefficient is not 1");
    result.emplace(w, Rational(1));
    for (const auto& [v, c] : t.terms()) {
        if (v == w) continue;
        if (compare_words(v, w, kLieOrder) >= 0)
            throw InternalError("decompose_terminal: correction term not smaller");
        const Decomposition& sub = decompose_rec(v, ctx, memo);
        for (const auto& [key, coeff] : sub) {
            auto [pos, inserted] = result.emplace(key, -c * coeff);
            if (!inserted) {
                pos->second += -c * coeff;
                if (pos->second.is_zero()) result.erase(pos);
            }
        }
    }
    return memo.emplace(w, std::move(result)).first->second;
}

}  // namespace

Decomposition decompose_terminal(const Word& w, const LieConfContext& ctx)
{
    if (!is_terminal(w, ctx.rules)) throw ArgumentError("decompose_terminal: word is not terminal");
    std::map<Word, Decomposition, WordKeyLess> memo;
    return decompose_rec(w, ctx, memo);
}

std::vector<VertexVector> basis_C_in_V(const LieConfContext& ctx, int max_length, Index lo,
                                       Index hi)
{
    std::vector<VertexVector> out;
    for (const auto& p : basis_L(ctx, max_length, lo, hi)) {
        VertexVector v;
        for (const auto& [w, c] : p.terms()) {
            if (!w.empty() && w.gens.back().index >= 0) continue;
            v.add_term(w, c);
        }
        if (!v.is_zero()) out.push_back(std::move(v));
    }

    // contract: the surviving vectors are linearly independent over Q
    std::map<Word, std::size_t, WordKeyLess> columns;
    for (const auto& v : out)
        for (const auto& [w, c] : v.terms()) columns.emplace(w, columns.size());
    std::vector<std::vector<Rational>> rows;
    rows.reserve(out.size());
    for (const auto& v : out) {
        std::vector<Rational> row(columns.size(), Rational(0));
        for (const auto& [w, c] : v.terms()) row[columns.at(w)] = c;
        rows.push_back(std::move(row));
    }
    if (exact_rank(rows) != static_cast<int>(out.size()))
        throw InternalError("basis_C_in_V: projected vectors are linearly dependent");
    return out;
}

json hall_tree_to_json(const HallTree& h, const Alphabet& alphabet)
{
    if (h.is_leaf()) {
        const Generator& g = h.generator();
        return json::array({alphabet.name(g.letter), g.index});
    }
    return json::array({hall_tree_to_json(h.left(), alphabet),
                        hall_tree_to_json(h.right(), alphabet)});
}

HallTree hall_tree_from_json(const json& j, const Alphabet& alphabet)
{
    if (!j.is_array() || j.size() != 2) throw ArgumentError("hall tree JSON must be a pair");
    if (j[0].is_string())
        return HallTree::leaf(Generator{alphabet.letter(j[0].get<std::string>()), j[1].get<Index>()});
    return HallTree::node(hall_tree_from_json(j[0], alphabet),
                          hall_tree_from_json(j[1], alphabet));
}

}  // namespace confree
