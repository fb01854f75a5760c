#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "confree/rewrite.hpp"
#include "confree/terms.hpp"

namespace confree {

/// Locality function on ordered letter pairs: a single constant N, or a full
/// table. Tables must be total on the alphabet; they need not be symmetric.
class LocalityFn {
public:
    static LocalityFn constant(Index n);
    /// Requires a value for every ordered pair "x,y"; no defaults.
    static LocalityFn from_pairs(const Alphabet& alphabet,
                                 const std::map<std::pair<std::string, std::string>, Index>& pairs);
    /// {"constant": N} or {"pairs": {"a,b": 2, "b,a": 1, ...}}.
    static LocalityFn from_json(const Alphabet& alphabet, const json& j);

    bool is_constant() const { return constant_.has_value(); }
    Index constant_value() const;
    Index operator()(Letter left, Letter right) const;

    json to_json(const Alphabet& alphabet) const;

private:
    LocalityFn() = default;
    std::optional<Index> constant_;
    int nletters_ = 0;
    std::vector<Index> table_;  // row-major [left][right] when not constant
};

/// Rewriting rules for the coefficient algebra A of the free associative
/// conformal algebra. The left index of a terminal pair lies in
/// [-ceil((N-1)/2), floor((N-1)/2)] with N = N(left letter, right letter);
/// rules above the window shift indices (n-s, m+s), rules below shift
/// (n+s, m-s). N = 0 rewrites the pair to zero.
RuleSet assoc_ruleset(const Alphabet& alphabet, const LocalityFn& locality);

struct AssocConfContext {
    Alphabet alphabet;
    LocalityFn locality;
    RuleSet rules;

    static AssocConfContext make(Alphabet alphabet, LocalityFn locality);
};

/// Normal form in A.
NcPoly nf_A(const NcPoly& p, const AssocConfContext& ctx, long step_limit = kDefaultStepLimit);

bool is_basis_word_A(const Word& w, const AssocConfContext& ctx);
/// Basis of the positive part: 0 <= n_i <= N_i - 1 for i < l and n_l >= 0.
bool is_basis_word_Aplus(const Word& w, const AssocConfContext& ctx);

/// Basis words of A with the given letter sequence and index sum; the last
/// index is determined by the sum, so the set is finite.
std::vector<Word> enum_basis_A(const AssocConfContext& ctx, const std::vector<Letter>& letters,
                               Index sum);
/// Same over all letter sequences of the given length.
std::vector<Word> enum_basis_A_all(const AssocConfContext& ctx, int length, Index sum);

/// Basis words of A+ with the given letter sequence and index sum.
std::vector<Word> enum_basis_Aplus(const AssocConfContext& ctx, const std::vector<Letter>& letters,
                                   Index sum);

/// Number of basis words of length l and index sum k (over all letter
/// sequences). For one letter and constant locality N this is N^(l-1).
long long dim_Akl(const AssocConfContext& ctx, Index k, int l);

/// Rules of the presentation of A+ on the non-negative generators: the pair
/// b(n)a(m) with n >= N(b,a) and m >= 0 rewrites leftward, staying inside
/// the non-negative index range.
RuleSet assoc_plus_ruleset(const Alphabet& alphabet, const LocalityFn& locality);

/// Shift every index in every word by `steps` (an algebra automorphism).
NcPoly tau_shift(const NcPoly& p, Index steps = 1);

}  // namespace confree
