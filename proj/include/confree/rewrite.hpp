#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "confree/terms.hpp"

namespace confree {

using nlohmann::json;

/// One rewriting rule: a length-2 principal word and its replacement.
/// Every replacement word has length 2, is strictly smaller than the
/// principal under the owning rule set's order, and preserves the letter
/// multiset and index sum of the principal.
struct Rule {
    Word principal;
    NcPoly replacement;
};

/// An intensional rule family: adjacent generator pair -> optional rule.
/// The generator set is infinite, so rules are produced on demand by a
/// deterministic query function. Normal forms are memoized per word.
class RuleSet {
public:
    using Query = std::function<std::optional<Rule>(const Generator& left, const Generator& right)>;

    RuleSet(Query query, OrderSpec order, std::string tag);

    /// Rule whose principal part is `left right`, if any. Each materialized
    /// rule is validated against the Rule invariants.
    std::optional<Rule> query(const Generator& left, const Generator& right) const;

    const OrderSpec& order() const { return order_; }
    const std::string& tag() const { return tag_; }

    std::size_t cache_size() const;
    void clear_cache() const;

private:
    friend class Reduction;
    struct Memo;

    Query query_;
    OrderSpec order_;
    std::string tag_;
    std::shared_ptr<Memo> memo_;
};

inline constexpr long kDefaultStepLimit = 1'000'000;

/// True iff no adjacent pair of `w` is a principal part. The empty word and
/// all length-1 words are terminal.
bool is_terminal(const Word& w, const RuleSet& rs);
bool is_terminal(const NcPoly& p, const RuleSet& rs);

/// Unique terminal polynomial t with w -> t, computed by repeatedly rewriting
/// the leftmost applicable pair. Throws StepLimitError when `step_limit` rule
/// applications are exceeded or a cycle is detected.
NcPoly reduce_word(const Word& w, const RuleSet& rs, long step_limit = kDefaultStepLimit);

/// Linear extension of reduce_word; idempotent.
NcPoly reduce_poly(const NcPoly& p, const RuleSet& rs, long step_limit = kDefaultStepLimit);

struct TraceStep {
    std::size_t position;           // offset of the rewritten pair
    Word principal;                 // the pair that was rewritten
    std::size_t replacement_terms;  // term count of the rule's replacement
};

struct TracedReduction {
    NcPoly normal_form;
    std::vector<TraceStep> steps;
    std::vector<Word> words_seen;  // every word that appeared, input included
};

/// Like reduce_word but uncached, recording each rule application and every
/// intermediate word.
TracedReduction reduce_word_traced(const Word& w, const RuleSet& rs,
                                   long step_limit = kDefaultStepLimit);

json trace_to_json(const TracedReduction& tr, const Alphabet& alphabet);

/// All length-3 words c(k)b(j)a(i) with k,j,i in [lo,hi] and letters from
/// `alphabet` whose two adjacent pairs are both principal parts. Sorted
/// descending under the rule set's order.
std::vector<Word> enumerate_ambiguities(const RuleSet& rs, const Alphabet& alphabet, Index lo,
                                        Index hi);

struct ConfluenceWitness {
    bool confluent = false;
    NcPoly via_left;   // terminal reached by applying the left rule first
    NcPoly via_right;  // terminal reached by applying the right rule first
};

/// Resolves the overlap of `w` (a length-3 ambiguity) both ways and compares
/// the terminals. Throws ArgumentError if `w` is not an ambiguity for `rs`.
ConfluenceWitness check_local_confluence(const Word& w, const RuleSet& rs,
                                         long step_limit = kDefaultStepLimit);

struct ConfluenceReport {
    std::size_t ambiguities = 0;
    std::size_t failures = 0;
    std::vector<std::pair<Word, ConfluenceWitness>> failed;
};

/// Checks every ambiguity in the window. `threads` > 1 splits the work;
/// results are merged in enumeration order so output is deterministic.
ConfluenceReport sweep_confluence(const RuleSet& rs, const Alphabet& alphabet, Index lo, Index hi,
                                  int threads = 1, long step_limit = kDefaultStepLimit);

}  // namespace confree
