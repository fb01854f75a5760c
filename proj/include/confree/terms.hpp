#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confree/rational.hpp"

namespace confree {

using Index = std::int64_t;

/// A symbol of the generating alphabet, identified by its declaration rank.
struct Letter {
    int rank = 0;
    friend bool operator==(Letter, Letter) = default;
    friend auto operator<=>(Letter, Letter) = default;
};

/// Ordered alphabet. The user's declaration order is the letter order;
/// no implicit sorting happens anywhere.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(Letter l) const;
    Letter letter(const std::string& name) const;
    std::optional<Letter> find(const std::string& name) const;
    std::vector<Letter> letters() const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> names_;
};

/// A generator symbol a(n): letter plus an integer index.
struct Generator {
    Letter letter;
    Index index = 0;
    friend bool operator==(const Generator&, const Generator&) = default;
};

/// A finite (possibly empty) sequence of generators. The empty word is the
/// multiplicative unit of the ambient free algebra.
struct Word {
    std::vector<Generator> gens;

    Word() = default;
    explicit Word(std::vector<Generator> g) : gens(std::move(g)) {}
    static Word single(Generator g) { return Word({g}); }

    std::size_t size() const { return gens.size(); }
    bool empty() const { return gens.empty(); }
    const Generator& operator[](std::size_t i) const { return gens[i]; }

    Index index_sum() const;
    /// Letter ranks, sorted; used for conservation checks.
    std::vector<int> letter_multiset() const;

    friend Word operator*(const Word& a, const Word& b);
    friend bool operator==(const Word&, const Word&) = default;
};

enum class GenOrder { lie, assoc };
enum class WordOrder { length_lex, lyndon_prefix };

struct OrderSpec {
    GenOrder generator_order = GenOrder::lie;
    WordOrder word_order = WordOrder::length_lex;
    friend bool operator==(const OrderSpec&, const OrderSpec&) = default;
};

inline constexpr OrderSpec kLieOrder{GenOrder::lie, WordOrder::length_lex};
inline constexpr OrderSpec kAssocOrder{GenOrder::assoc, WordOrder::length_lex};
inline constexpr OrderSpec kLyndonOrder{GenOrder::lie, WordOrder::lyndon_prefix};

/// lie:   a(m) < b(n) iff m < n, ties broken by letter rank.
/// assoc: graded by |index|, with a(0) < a(-1) < a(1) < a(-2) < ...;
///        letters decide only at equal index.
std::strong_ordering compare_generators(const Generator& g1, const Generator& g2, GenOrder mode);

/// length_lex: shorter word first, then leftmost difference.
/// lyndon_prefix: a proper prefix is GREATER than the word; otherwise
/// leftmost difference decides.
std::strong_ordering compare_words(const Word& w1, const Word& w2, const OrderSpec& spec);

/// Fixed structural order for containers; unrelated to any OrderSpec.
struct WordKeyLess {
    bool operator()(const Word& a, const Word& b) const;
};

struct WordHash {
    std::size_t operator()(const Word& w) const;
};

/// Noncommutative polynomial: finitely supported map Word -> Rational.
/// Never stores a zero coefficient; equality is exact map equality.
class NcPoly {
public:
    using TermMap = std::map<Word, Rational, WordKeyLess>;

    NcPoly() = default;

    static NcPoly zero() { return NcPoly(); }
    static NcPoly unit() { return NcPoly::term(Word(), Rational(1)); }
    static NcPoly term(Word w, Rational c);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    /// Coefficient of w, zero if absent.
    Rational coeff(const Word& w) const;

    void add_term(const Word& w, const Rational& c);

    NcPoly& operator+=(const NcPoly& o);
    NcPoly& operator-=(const NcPoly& o);
    NcPoly& operator*=(const Rational& c);

    friend NcPoly operator+(NcPoly a, const NcPoly& b) { a += b; return a; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { a -= b; return a; }
    friend NcPoly operator*(NcPoly a, const Rational& c) { a *= c; return a; }
    friend NcPoly operator*(const Rational& c, NcPoly a) { a *= c; return a; }
    NcPoly operator-() const;

    /// Bilinear extension of word concatenation.
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b);

    friend bool operator==(const NcPoly&, const NcPoly&) = default;

private:
    TermMap terms_;
};

inline NcPoly poly_mul(const NcPoly& p, const NcPoly& q) { return p * q; }

/// pq - qp.
NcPoly poly_commutator(const NcPoly& p, const NcPoly& q);

/// Maximal word of the support under `spec`, with its coefficient.
/// Throws ArgumentError on the zero polynomial.
std::pair<Word, Rational> leading_word(const NcPoly& p, const OrderSpec& spec);

// Debug printing; letters appear as #rank. Real output goes through io.hpp
// with an Alphabet.
std::ostream& operator<<(std::ostream& os, const Generator& g);
std::ostream& operator<<(std::ostream& os, const Word& w);
std::ostream& operator<<(std::ostream& os, const NcPoly& p);

}  // namespace confree
