#pragma once

#include <map>
#include <memory>
#include <vector>

#include <json.hpp>

#include "confree/lie_conformal.hpp"
#include "confree/terms.hpp"

namespace confree {

/// Immutable binary tree with generator leaves. Trees are compared through
/// their foliage, so the Hall conditions below read directly off words.
class HallTree {
public:
    static HallTree leaf(Generator g);
    static HallTree node(HallTree left, HallTree right);

    bool is_leaf() const;
    const Generator& generator() const;  // leaf only
    HallTree left() const;               // node only
    HallTree right() const;              // node only

    friend bool operator==(const HallTree& a, const HallTree& b);

private:
    struct Node;
    explicit HallTree(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

// All word comparisons in this module use the lie generator order with the
// prefix-is-greater word order.

/// True iff w is greater than every proper suffix of itself.
/// Throws ArgumentError on the empty word.
bool is_lyndon(const Word& w);

/// The unique non-decreasing sequence of Lyndon-Shirshov factors whose
/// concatenation is w, found by repeatedly splitting off the maximal proper
/// suffix.
std::vector<Word> lyndon_factorize(const Word& w);

/// Standard bracketing of a Lyndon-Shirshov word: split before the longest
/// proper suffix that is itself Lyndon-Shirshov, recurse on both parts.
HallTree bracketing(const Word& w);

/// Foliage: the leaf word of a tree.
Word alpha(const HallTree& h);

/// Fully expanded iterated commutator of a tree.
NcPoly lambda_expand(const HallTree& h);

/// Checks the defining conditions of a Hall set on the whole tree.
bool satisfies_hall_conditions(const HallTree& h);

/// All terminal Lyndon-Shirshov words of the given length with indices in
/// [lo, hi], descending.
std::vector<Word> terminal_lyndon_words(const LieConfContext& ctx, int length, Index lo, Index hi);

/// Normal forms of the iterated commutators of all terminal Lyndon-Shirshov
/// words in the window with length <= max_length: a linearly independent
/// family in the coefficient Lie algebra, listed by increasing length and
/// descending word within a length.
std::vector<NcPoly> basis_L(const LieConfContext& ctx, int max_length, Index lo, Index hi);

/// Coefficients expressing a terminal word in the PBW-style basis of
/// products of basis brackets. Keys are the concatenated foliages of the
/// non-decreasing Hall sequences (the concatenation determines the sequence).
std::map<Word, Rational, WordKeyLess> decompose_terminal(const Word& w, const LieConfContext& ctx);

/// Normal form of the bracket product determined by a decomposition key:
/// factorize, bracket each factor, multiply the expansions, reduce.
NcPoly hall_sequence_normal_form(const Word& key, const LieConfContext& ctx);

/// Images in V of basis_L elements: delete words with non-negative rightmost
/// index, drop zeros. The result is verified linearly independent by an
/// exact rank check.
std::vector<VertexVector> basis_C_in_V(const LieConfContext& ctx, int max_length, Index lo,
                                       Index hi);

/// Nested-array JSON: a leaf is ["a", n], a node is [left, right].
json hall_tree_to_json(const HallTree& h, const Alphabet& alphabet);
HallTree hall_tree_from_json(const json& j, const Alphabet& alphabet);

}  // namespace confree
