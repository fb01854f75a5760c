#include "confree/rewrite.hpp"

#include <algorithm>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "confree/errors.hpp"
#include "confree/io.hpp"

namespace confree {

struct RuleSet::Memo {
    std::mutex mutex;
    std::unordered_map<Word, NcPoly, WordHash> normal_forms;
};

RuleSet::RuleSet(Query query, OrderSpec order, std::string tag)
    : query_(std::move(query)), order_(order), tag_(std::move(tag)), memo_(std::make_shared<Memo>())
{
    if (!query_) throw ArgumentError("RuleSet: null query function");
}

namespace {

void validate_rule(const Rule& rule, const Generator& left, const Generator& right,
                   const OrderSpec& order, const std::string& tag)
{
    if (rule.principal.size() != 2 || rule.principal[0] != left || rule.principal[1] != right)
        throw InternalError("ruleset '" + tag + "': principal part does not match queried pair");
    const auto expect_letters = rule.principal.letter_multiset();
    const Index expect_sum = rule.principal.index_sum();
    for (const auto& [w, c] : rule.replacement.terms()) {
        if (w.size() != 2)
            throw InternalError("ruleset '" + tag + "': replacement word of length != 2");
        if (compare_words(w, rule.principal, order) >= 0)
            throw InternalError("ruleset '" + tag + "': replacement word not smaller than principal");
        if (w.letter_multiset() != expect_letters || w.index_sum() != expect_sum)
            throw InternalError("ruleset '" + tag + "': replacement breaks conservation");
    }
}

}  // namespace

std::optional<Rule> RuleSet::query(const Generator& left, const Generator& right) const
{
    auto rule = query_(left, right);
    if (rule) validate_rule(*rule, left, right, order_, tag_);
    return rule;
}

std::size_t RuleSet::cache_size() const
{
    std::lock_guard lock(memo_->mutex);
    return memo_->normal_forms.size();
}

void RuleSet::clear_cache() const
{
    std::lock_guard lock(memo_->mutex);
    memo_->normal_forms.clear();
}

bool is_terminal(const Word& w, const RuleSet& rs)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (rs.query(w[i], w[i + 1])) return false;
    return true;
}

bool is_terminal(const NcPoly& p, const RuleSet& rs)
{
    for (const auto& [w, c] : p.terms())
        if (!is_terminal(w, rs)) return false;
    return true;
}

// Reduction worker. Recursive over strictly descending words: one rule
// application at the leftmost applicable pair, then full reduction of each
// replacement word. Cycle detection catches rule families that do not
// terminate through a repeated word; the step budget and the depth guard
// catch the rest.
class Reduction {
    static constexpr std::size_t kMaxDepth = 4000;

public:
    Reduction(const RuleSet& rs, long step_limit, bool use_memo, TracedReduction* trace)
        : rs_(rs), limit_(step_limit), use_memo_(use_memo), trace_(trace)
    {
        if (step_limit <= 0) throw ArgumentError("step_limit must be positive");
    }

    NcPoly reduce(const Word& w)
    {
        if (trace_) trace_->words_seen.push_back(w);
        if (use_memo_) {
            std::lock_guard lock(rs_.memo_->mutex);
            auto it = rs_.memo_->normal_forms.find(w);
            if (it != rs_.memo_->normal_forms.end()) return it->second;
        }
        if (in_progress_.contains(w))
            throw StepLimitError("ruleset '" + rs_.tag_ + "': reduction cycle detected");

        std::optional<Rule> rule;
        std::size_t pos = 0;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            rule = rs_.query(w[i], w[i + 1]);
            if (rule) {
                pos = i;
                break;
            }
        }
        if (!rule) return NcPoly::term(w, Rational(1));

        if (++steps_ > limit_)
            throw StepLimitError("ruleset '" + rs_.tag_ + "': step limit of " +
                                 std::to_string(limit_) + " exceeded");
        if (in_progress_.size() >= kMaxDepth)
            throw StepLimitError("ruleset '" + rs_.tag_ +
                                 "': descending chain exceeds depth guard");
        if (trace_) trace_->steps.push_back({pos, rule->principal, rule->replacement.term_count()});

        in_progress_.insert(w);
        NcPoly result;
        for (const auto& [rw, c] : rule->replacement.terms()) {
            Word u;
            u.gens.reserve(w.size());
            u.gens.insert(u.gens.end(), w.gens.begin(), w.gens.begin() + static_cast<long>(pos));
            u.gens.insert(u.gens.end(), rw.gens.begin(), rw.gens.end());
            u.gens.insert(u.gens.end(), w.gens.begin() + static_cast<long>(pos) + 2, w.gens.end());
            if (compare_words(u, w, rs_.order()) >= 0)
                throw InternalError("ruleset '" + rs_.tag_ + "': rule application did not descend");
            result += c * reduce(u);
        }
        in_progress_.erase(w);

        if (use_memo_) {
            std::lock_guard lock(rs_.memo_->mutex);
            rs_.memo_->normal_forms.emplace(w, result);
        }
        return result;
    }

private:
    const RuleSet& rs_;
    long limit_;
    long steps_ = 0;
    bool use_memo_;
    TracedReduction* trace_;
    std::unordered_set<Word, WordHash> in_progress_;
};

NcPoly reduce_word(const Word& w, const RuleSet& rs, long step_limit)
{
    Reduction r(rs, step_limit, /*use_memo=*/true, nullptr);
    return r.reduce(w);
}

NcPoly reduce_poly(const NcPoly& p, const RuleSet& rs, long step_limit)
{
    NcPoly out;
    for (const auto& [w, c] : p.terms()) out += c * reduce_word(w, rs, step_limit);
    return out;
}

TracedReduction reduce_word_traced(const Word& w, const RuleSet& rs, long step_limit)
{
    TracedReduction trace;
    Reduction r(rs, step_limit, /*use_memo=*/false, &trace);
    trace.normal_form = r.reduce(w);
    return trace;
}

json trace_to_json(const TracedReduction& tr, const Alphabet& alphabet)
{
    json steps = json::array();
    for (const auto& s : tr.steps)
        steps.push_back({{"position", s.position},
                         {"principal", word_to_json(s.principal, alphabet)},
                         {"terms", s.replacement_terms}});
    return steps;
}

std::vector<Word> enumerate_ambiguities(const RuleSet& rs, const Alphabet& alphabet, Index lo,
                                        Index hi)
{
    if (lo > hi) throw ArgumentError("enumerate_ambiguities: empty index window");
    std::vector<Word> out;
    const auto letters = alphabet.letters();
    for (Letter c : letters)
        for (Index k = lo; k <= hi; ++k)
            for (Letter b : letters)
                for (Index j = lo; j <= hi; ++j) {
                    if (!rs.query(Generator{c, k}, Generator{b, j})) continue;
                    for (Letter a : letters)
                        for (Index i = lo; i <= hi; ++i) {
                            if (!rs.query(Generator{b, j}, Generator{a, i})) continue;
                            out.push_back(Word({Generator{c, k}, Generator{b, j}, Generator{a, i}}));
                        }
                }
    std::sort(out.begin(), out.end(), [&](const Word& x, const Word& y) {
        return compare_words(x, y, rs.order()) > 0;
    });
    return out;
}

ConfluenceWitness check_local_confluence(const Word& w, const RuleSet& rs, long step_limit)
{
    if (w.size() != 3) throw ArgumentError("check_local_confluence: word must have length 3");
    auto left_rule = rs.query(w[0], w[1]);
    auto right_rule = rs.query(w[1], w[2]);
    if (!left_rule || !right_rule)
        throw ArgumentError("check_local_confluence: word is not an ambiguity");

    NcPoly after_left = left_rule->replacement * NcPoly::term(Word::single(w[2]), Rational(1));
    NcPoly after_right = NcPoly::term(Word::single(w[0]), Rational(1)) * right_rule->replacement;

    ConfluenceWitness witness;
    witness.via_left = reduce_poly(after_left, rs, step_limit);
    witness.via_right = reduce_poly(after_right, rs, step_limit);
    witness.confluent = witness.via_left == witness.via_right;
    return witness;
}

ConfluenceReport sweep_confluence(const RuleSet& rs, const Alphabet& alphabet, Index lo, Index hi,
                                  int threads, long step_limit)
{
    const auto ambiguities = enumerate_ambiguities(rs, alphabet, lo, hi);
    ConfluenceReport report;
    report.ambiguities = ambiguities.size();

    threads = std::max(1, threads);
    std::vector<std::vector<std::pair<Word, ConfluenceWitness>>> failed_per_chunk(
        static_cast<std::size_t>(threads));

    auto work = [&](int chunk) {
        for (std::size_t i = static_cast<std::size_t>(chunk); i < ambiguities.size();
             i += static_cast<std::size_t>(threads)) {
            auto witness = check_local_confluence(ambiguities[i], rs, step_limit);
            if (!witness.confluent)
                failed_per_chunk[static_cast<std::size_t>(chunk)].emplace_back(ambiguities[i],
                                                                               std::move(witness));
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& t : pool) t.join();
    }

    for (auto& chunk : failed_per_chunk)
        for (auto& f : chunk) report.failed.push_back(std::move(f));
    std::sort(report.failed.begin(), report.failed.end(), [&](const auto& x, const auto& y) {
        return compare_words(x.first, y.first, rs.order()) > 0;
    });
    report.failures = report.failed.size();
    return report;
}

}  // namespace confree
