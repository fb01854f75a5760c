#include "confree/terms.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>

#include "confree/errors.hpp"

namespace confree {

namespace {

bool valid_letter_name(const std::string& s)
{
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.empty()) throw ArgumentError("alphabet must be non-empty");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!valid_letter_name(n)) throw ArgumentError("bad letter name: '" + n + "'");
        if (!seen.insert(n).second) throw ArgumentError("duplicate letter: '" + n + "'");
    }
}

const std::string& Alphabet::name(Letter l) const
{
    if (l.rank < 0 || l.rank >= size()) throw ArgumentError("letter rank out of range");
    return names_[static_cast<std::size_t>(l.rank)];
}

Letter Alphabet::letter(const std::string& name) const
{
    auto l = find(name);
    if (!l) throw ArgumentError("unknown letter: '" + name + "'");
    return *l;
}

std::optional<Letter> Alphabet::find(const std::string& name) const
{
    for (int i = 0; i < size(); ++i)
        if (names_[static_cast<std::size_t>(i)] == name) return Letter{i};
    return std::nullopt;
}

std::vector<Letter> Alphabet::letters() const
{
    std::vector<Letter> out;
    out.reserve(names_.size());
    for (int i = 0; i < size(); ++i) out.push_back(Letter{i});
    return out;
}

Index Word::index_sum() const
{
    Index s = 0;
    for (const auto& g : gens) s += g.index;
    return s;
}

std::vector<int> Word::letter_multiset() const
{
    std::vector<int> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(g.letter.rank);
    std::sort(out.begin(), out.end());
    return out;
}

Word operator*(const Word& a, const Word& b)
{
    Word out;
    out.gens.reserve(a.size() + b.size());
    out.gens.insert(out.gens.end(), a.gens.begin(), a.gens.end());
    out.gens.insert(out.gens.end(), b.gens.begin(), b.gens.end());
    return out;
}

std::strong_ordering compare_generators(const Generator& g1, const Generator& g2, GenOrder mode)
{
    if (mode == GenOrder::lie) {
        if (auto c = g1.index <=> g2.index; c != 0) return c;
        return g1.letter.rank <=> g2.letter.rank;
    }
    // assoc: grade by |index|; at equal absolute value the negative index is
    // smaller; letters matter only at exactly equal index.
    auto abs1 = g1.index < 0 ? -g1.index : g1.index;
    auto abs2 = g2.index < 0 ? -g2.index : g2.index;
    if (auto c = abs1 <=> abs2; c != 0) return c;
    int pos1 = g1.index > 0 ? 1 : 0;
    int pos2 = g2.index > 0 ? 1 : 0;
    if (auto c = pos1 <=> pos2; c != 0) return c;
    return g1.letter.rank <=> g2.letter.rank;
}

std::strong_ordering compare_words(const Word& w1, const Word& w2, const OrderSpec& spec)
{
    if (spec.word_order == WordOrder::length_lex) {
        if (auto c = w1.size() <=> w2.size(); c != 0) return c;
        for (std::size_t i = 0; i < w1.size(); ++i)
            if (auto c = compare_generators(w1[i], w2[i], spec.generator_order); c != 0) return c;
        return std::strong_ordering::equal;
    }
    // lyndon_prefix
    std::size_t common = std::min(w1.size(), w2.size());
    for (std::size_t i = 0; i < common; ++i)
        if (auto c = compare_generators(w1[i], w2[i], spec.generator_order); c != 0) return c;
    if (w1.size() == w2.size()) return std::strong_ordering::equal;
    // the proper prefix is the greater word
    return w1.size() < w2.size() ? std::strong_ordering::greater : std::strong_ordering::less;
}

bool WordKeyLess::operator()(const Word& a, const Word& b) const
{
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].letter.rank != b[i].letter.rank) return a[i].letter.rank < b[i].letter.rank;
        if (a[i].index != b[i].index) return a[i].index < b[i].index;
    }
    return false;
}

std::size_t WordHash::operator()(const Word& w) const
{
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (const auto& g : w.gens) {
        mix(static_cast<std::size_t>(g.letter.rank));
        mix(static_cast<std::size_t>(g.index));
    }
    return h;
}

NcPoly NcPoly::term(Word w, Rational c)
{
    NcPoly p;
    if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
    return p;
}

Rational NcPoly::coeff(const Word& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void NcPoly::add_term(const Word& w, const Rational& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NcPoly& NcPoly::operator+=(const NcPoly& o)
{
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o)
{
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NcPoly& NcPoly::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    return *this;
}

NcPoly NcPoly::operator-() const
{
    NcPoly out;
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b)
{
    NcPoly out;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) out.add_term(wa * wb, ca * cb);
    return out;
}

NcPoly poly_commutator(const NcPoly& p, const NcPoly& q) { return p * q - q * p; }

std::pair<Word, Rational> leading_word(const NcPoly& p, const OrderSpec& spec)
{
    if (p.is_zero()) throw ArgumentError("leading_word: zero polynomial has no leading term");
    const Word* best = nullptr;
    const Rational* best_c = nullptr;
    for (const auto& [w, c] : p.terms()) {
        if (!best || compare_words(w, *best, spec) > 0) {
            best = &w;
            best_c = &c;
        }
    }
    return {*best, *best_c};
}

std::ostream& operator<<(std::ostream& os, const Generator& g)
{
    return os << '#' << g.letter.rank << '(' << g.index << ')';
}

std::ostream& operator<<(std::ostream& os, const Word& w)
{
    if (w.empty()) return os << "1";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << '*';
        os << w[i];
    }
    return os;
}

std::ostream& operator<<(std::ostream& os, const NcPoly& p)
{
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        if (!first) os << " + ";
        os << c.str() << '*' << w;
        first = false;
    }
    return os;
}

}  // namespace confree
