#include "confree/assoc_conformal.hpp"

#include <algorithm>

#include "confree/errors.hpp"

namespace confree {

namespace {

Index floor_half(Index x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }
Index ceil_half(Index x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }

// terminal window of the left index for a pair with locality n
Index window_lo(Index n) { return -ceil_half(n - 1); }
Index window_hi(Index n) { return floor_half(n - 1); }

}  // namespace

LocalityFn LocalityFn::constant(Index n)
{
    if (n < 0) throw ArgumentError("locality must be non-negative");
    LocalityFn f;
    f.constant_ = n;
    return f;
}

LocalityFn LocalityFn::from_pairs(const Alphabet& alphabet,
                                  const std::map<std::pair<std::string, std::string>, Index>& pairs)
{
    LocalityFn f;
    f.nletters_ = alphabet.size();
    f.table_.assign(static_cast<std::size_t>(f.nletters_ * f.nletters_), -1);
    for (const auto& [key, n] : pairs) {
        if (n < 0) throw ArgumentError("locality must be non-negative");
        Letter l = alphabet.letter(key.first);
        Letter r = alphabet.letter(key.second);
        f.table_[static_cast<std::size_t>(l.rank * f.nletters_ + r.rank)] = n;
    }
    for (int l = 0; l < f.nletters_; ++l)
        for (int r = 0; r < f.nletters_; ++r)
            if (f.table_[static_cast<std::size_t>(l * f.nletters_ + r)] < 0)
                throw ArgumentError("locality table is missing pair '" + alphabet.name(Letter{l}) +
                                    "," + alphabet.name(Letter{r}) + "'");
    return f;
}

LocalityFn LocalityFn::from_json(const Alphabet& alphabet, const json& j)
{
    if (j.contains("constant")) return constant(j.at("constant").get<Index>());
    if (j.contains("pairs")) {
        std::map<std::pair<std::string, std::string>, Index> pairs;
        for (const auto& [key, value] : j.at("pairs").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw ArgumentError("locality pair key must be 'left,right': '" + key + "'");
            pairs[{key.substr(0, comma), key.substr(comma + 1)}] = value.get<Index>();
        }
        return from_pairs(alphabet, pairs);
    }
    throw ArgumentError("locality JSON needs 'constant' or 'pairs'");
}

Index LocalityFn::constant_value() const
{
    if (!constant_) throw ArgumentError("locality function is not constant");
    return *constant_;
}

Index LocalityFn::operator()(Letter left, Letter right) const
{
    if (constant_) return *constant_;
    if (left.rank < 0 || left.rank >= nletters_ || right.rank < 0 || right.rank >= nletters_)
        throw ArgumentError("locality lookup outside the alphabet");
    return table_[static_cast<std::size_t>(left.rank * nletters_ + right.rank)];
}

json LocalityFn::to_json(const Alphabet& alphabet) const
{
    if (constant_) return json{{"constant", *constant_}};
    json pairs = json::object();
    for (int l = 0; l < nletters_; ++l)
        for (int r = 0; r < nletters_; ++r)
            pairs[alphabet.name(Letter{l}) + "," + alphabet.name(Letter{r})] =
                table_[static_cast<std::size_t>(l * nletters_ + r)];
    return json{{"pairs", pairs}};
}

RuleSet assoc_ruleset(const Alphabet& alphabet, const LocalityFn& locality)
{
    const int nletters = alphabet.size();
    // force totality errors now, not mid-reduction
    for (int l = 0; l < nletters; ++l)
        for (int r = 0; r < nletters; ++r) locality(Letter{l}, Letter{r});

    auto query = [locality, nletters](const Generator& left,
                                      const Generator& right) -> std::optional<Rule> {
        if (left.letter.rank >= nletters || right.letter.rank >= nletters ||
            left.letter.rank < 0 || right.letter.rank < 0)
            throw ArgumentError("generator letter outside the declared alphabet");
        const Index n = locality(left.letter, right.letter);
        const Index lo = window_lo(n);
        const Index hi = window_hi(n);
        int dir = 0;
        if (left.index > hi) dir = -1;       // shift the left index down
        else if (left.index < lo) dir = +1;  // shift the left index up
        else return std::nullopt;

        Rule rule;
        rule.principal = Word({left, right});
        for (Index s = 1; s <= n; ++s) {
            Rational c = gen_binom(n, s);
            if (s % 2 == 0) c = -c;
            rule.replacement.add_term(Word({Generator{left.letter, left.index + dir * s},
                                            Generator{right.letter, right.index - dir * s}}),
                                      c);
        }
        return rule;
    };

    return RuleSet(std::move(query), kAssocOrder, "assoc");
}

AssocConfContext AssocConfContext::make(Alphabet alphabet, LocalityFn locality)
{
    RuleSet rules = assoc_ruleset(alphabet, locality);
    return AssocConfContext{std::move(alphabet), std::move(locality), std::move(rules)};
}

NcPoly nf_A(const NcPoly& p, const AssocConfContext& ctx, long step_limit)
{
    return reduce_poly(p, ctx.rules, step_limit);
}

bool is_basis_word_A(const Word& w, const AssocConfContext& ctx)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const Index n = ctx.locality(w[i].letter, w[i + 1].letter);
        if (w[i].index < window_lo(n) || w[i].index > window_hi(n)) return false;
    }
    return true;
}

bool is_basis_word_Aplus(const Word& w, const AssocConfContext& ctx)
{
    if (!w.empty() && w.gens.back().index < 0) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const Index n = ctx.locality(w[i].letter, w[i + 1].letter);
        if (w[i].index < 0 || w[i].index > n - 1) return false;
    }
    return true;
}

namespace {

void enum_letters_rec(const AssocConfContext& ctx, int length, std::vector<Letter>& current,
                      std::vector<std::vector<Letter>>& out)
{
    if (static_cast<int>(current.size()) == length) {
        out.push_back(current);
        return;
    }
    for (Letter l : ctx.alphabet.letters()) {
        current.push_back(l);
        enum_letters_rec(ctx, length, current, out);
        current.pop_back();
    }
}

std::vector<Word> enum_windowed(const AssocConfContext& ctx, const std::vector<Letter>& letters,
                                Index sum, bool positive_part)
{
    if (letters.empty()) throw ArgumentError("basis enumeration needs length >= 1");
    const std::size_t l = letters.size();
    std::vector<Word> out;
    Word current;
    current.gens.reserve(l);

    // indices 0..l-2 range over their windows; the last index is determined
    auto rec = [&](auto&& self, std::size_t i, Index partial) -> void {
        if (i + 1 == l) {
            Index last = sum - partial;
            if (positive_part && last < 0) return;
            current.gens.push_back(Generator{letters[i], last});
            out.push_back(current);
            current.gens.pop_back();
            return;
        }
        const Index n = ctx.locality(letters[i], letters[i + 1]);
        const Index lo = positive_part ? 0 : window_lo(n);
        const Index hi = positive_part ? n - 1 : window_hi(n);
        for (Index v = lo; v <= hi; ++v) {
            current.gens.push_back(Generator{letters[i], v});
            self(self, i + 1, partial + v);
            current.gens.pop_back();
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end(),
              [](const Word& x, const Word& y) { return compare_words(x, y, kAssocOrder) > 0; });
    return out;
}

}  // namespace

std::vector<Word> enum_basis_A(const AssocConfContext& ctx, const std::vector<Letter>& letters,
                               Index sum)
{
    return enum_windowed(ctx, letters, sum, /*positive_part=*/false);
}

std::vector<Word> enum_basis_A_all(const AssocConfContext& ctx, int length, Index sum)
{
    if (length < 1) throw ArgumentError("enum_basis_A_all: length must be >= 1");
    std::vector<std::vector<Letter>> sequences;
    std::vector<Letter> current;
    enum_letters_rec(ctx, length, current, sequences);
    std::vector<Word> out;
    for (const auto& seq : sequences) {
        auto words = enum_basis_A(ctx, seq, sum);
        out.insert(out.end(), words.begin(), words.end());
    }
    std::sort(out.begin(), out.end(),
              [](const Word& x, const Word& y) { return compare_words(x, y, kAssocOrder) > 0; });
    return out;
}

std::vector<Word> enum_basis_Aplus(const AssocConfContext& ctx, const std::vector<Letter>& letters,
                                   Index sum)
{
    return enum_windowed(ctx, letters, sum, /*positive_part=*/true);
}

long long dim_Akl(const AssocConfContext& ctx, Index k, int l)
{
    return static_cast<long long>(enum_basis_A_all(ctx, l, k).size());
}

RuleSet assoc_plus_ruleset(const Alphabet& alphabet, const LocalityFn& locality)
{
    const int nletters = alphabet.size();
    for (int l = 0; l < nletters; ++l)
        for (int r = 0; r < nletters; ++r) locality(Letter{l}, Letter{r});

    auto query = [locality](const Generator& left, const Generator& right) -> std::optional<Rule> {
        if (left.index < 0 || right.index < 0) return std::nullopt;  // outside the X0 presentation
        const Index n = locality(left.letter, right.letter);
        if (left.index < n) return std::nullopt;

        Rule rule;
        rule.principal = Word({left, right});
        for (Index s = 1; s <= n; ++s) {
            Rational c = gen_binom(n, s);
            if (s % 2 == 0) c = -c;
            rule.replacement.add_term(Word({Generator{left.letter, left.index - s},
                                            Generator{right.letter, right.index + s}}),
                                      c);
        }
        return rule;
    };

    return RuleSet(std::move(query), kLieOrder, "assoc-plus");
}

NcPoly tau_shift(const NcPoly& p, Index steps)
{
    NcPoly out;
    for (const auto& [w, c] : p.terms()) {
        Word shifted = w;
        for (auto& g : shifted.gens) g.index += steps;
        out.add_term(shifted, c);
    }
    return out;
}

}  // namespace confree
