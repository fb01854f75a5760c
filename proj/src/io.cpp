#include "confree/io.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "confree/errors.hpp"

namespace confree {

namespace {

// Hand-rolled recursive-descent parser for the polynomial grammar.
// Whitespace-insensitive; juxtaposition of factors means multiplication.
class PolyParser {
public:
    PolyParser(const std::string& text, const Alphabet& alphabet) : s_(text), alpha_(alphabet) {}

    NcPoly parse()
    {
        NcPoly out;
        skip_ws();
        bool first = true;
        while (true) {
            int sign = 1;
            if (accept('+')) {
                sign = 1;
            } else if (accept('-')) {
                sign = -1;
            } else if (!first) {
                break;
            }
            skip_ws();
            auto [coeff, word] = parse_term();
            out.add_term(word, sign < 0 ? -coeff : coeff);
            skip_ws();
            first = false;
            if (eof()) break;
            if (peek() != '+' && peek() != '-') fail("expected '+', '-' or end of input");
        }
        if (!eof()) fail("trailing input");
        if (first) fail("empty polynomial");
        return out;
    }

    Word parse_single_word()
    {
        skip_ws();
        Word w;
        bool any = false;
        while (true) {
            skip_ws();
            if (eof()) break;
            if (std::isalpha(peek()) || peek() == '_') {
                w.gens.push_back(parse_gen());
                any = true;
            } else if (peek() == '*') {
                ++pos_;
            } else {
                fail("unexpected character in word");
            }
        }
        if (!any) fail("empty word");
        return w;
    }

    Generator parse_single_generator()
    {
        skip_ws();
        Generator g = parse_gen();
        skip_ws();
        if (!eof()) fail("trailing input after generator");
        return g;
    }

private:
    std::pair<Rational, Word> parse_term()
    {
        Rational coeff(1);
        Word word;
        bool saw_factor = false;
        while (true) {
            skip_ws();
            if (eof()) break;
            char c = peek();
            if (std::isdigit(c)) {
                Rational r = parse_rational();
                coeff *= r;
                saw_factor = true;
            } else if (std::isalpha(c) || c == '_') {
                word.gens.push_back(parse_gen());
                saw_factor = true;
            } else if (c == '*') {
                ++pos_;
                continue;
            } else {
                break;
            }
        }
        if (!saw_factor) fail("expected a term");
        return {coeff, word};
    }

    Rational parse_rational()
    {
        std::string num = parse_digits();
        skip_ws();
        if (accept('/')) {
            skip_ws();
            if (eof() || !std::isdigit(peek())) fail("expected denominator digits");
            std::string den = parse_digits();
            return Rational::from_string(num + "/" + den);
        }
        return Rational::from_string(num);
    }

    std::string parse_digits()
    {
        std::size_t start = pos_;
        while (!eof() && std::isdigit(peek())) ++pos_;
        if (!eof() && peek() == '.') fail("decimal literals are not supported");
        return s_.substr(start, pos_ - start);
    }

    Generator parse_gen()
    {
        std::size_t start = pos_;
        while (!eof() && (std::isalnum(peek()) || peek() == '_')) ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        auto letter = alpha_.find(name);
        if (!letter) throw ParseError("unknown letter '" + name + "'", start);
        skip_ws();
        if (!accept('(')) fail("expected '(' after letter");
        skip_ws();
        std::size_t num_start = pos_;
        if (accept('-')) skip_ws();
        if (eof() || !std::isdigit(peek())) fail("expected integer index");
        parse_digits();
        if (!eof() && peek() == '.') fail("decimal index is not an integer");
        Index idx = 0;
        try {
            idx = std::stoll(s_.substr(num_start, pos_ - num_start));
        } catch (const std::exception&) {
            fail("index out of range");
        }
        skip_ws();
        if (!accept(')')) fail("expected ')'");
        return Generator{*letter, idx};
    }

    void skip_ws()
    {
        while (!eof() && std::isspace(peek())) ++pos_;
    }
    bool eof() const { return pos_ >= s_.size(); }
    unsigned char peek() const { return static_cast<unsigned char>(s_[pos_]); }
    bool accept(char c)
    {
        if (!eof() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    const std::string& s_;
    const Alphabet& alpha_;
    std::size_t pos_ = 0;
};

}  // namespace

Generator parse_generator(const std::string& text, const Alphabet& alphabet)
{
    return PolyParser(text, alphabet).parse_single_generator();
}

Word parse_word(const std::string& text, const Alphabet& alphabet)
{
    return PolyParser(text, alphabet).parse_single_word();
}

NcPoly parse_poly(const std::string& text, const Alphabet& alphabet)
{
    return PolyParser(text, alphabet).parse();
}

std::string render_generator(const Generator& g, const Alphabet& alphabet)
{
    return alphabet.name(g.letter) + "(" + std::to_string(g.index) + ")";
}

std::string render_word(const Word& w, const Alphabet& alphabet)
{
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += "*";
        out += render_generator(w[i], alphabet);
    }
    return out;
}

namespace {

std::vector<const NcPoly::TermMap::value_type*> sorted_terms(const NcPoly& p,
                                                             std::optional<OrderSpec> order)
{
    std::vector<const NcPoly::TermMap::value_type*> terms;
    terms.reserve(p.term_count());
    for (const auto& t : p.terms()) terms.push_back(&t);
    if (order) {
        std::stable_sort(terms.begin(), terms.end(), [&](const auto* a, const auto* b) {
            return compare_words(a->first, b->first, *order) > 0;
        });
    } else {
        std::reverse(terms.begin(), terms.end());  // structural descending
    }
    return terms;
}

}  // namespace

std::string render_poly(const NcPoly& p, const Alphabet& alphabet, std::optional<OrderSpec> order)
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto* t : sorted_terms(p, order)) {
        const auto& [w, c] = *t;
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        bool unit_coeff = mag == Rational(1);
        if (!unit_coeff || w.empty()) out += mag.str();
        if (!w.empty()) {
            if (!unit_coeff) out += "*";
            out += render_word(w, alphabet);
        }
        first = false;
    }
    return out;
}

json word_to_json(const Word& w, const Alphabet& alphabet)
{
    json arr = json::array();
    for (const auto& g : w.gens) arr.push_back(json::array({alphabet.name(g.letter), g.index}));
    return arr;
}

Word word_from_json(const json& j, const Alphabet& alphabet)
{
    if (!j.is_array()) throw ArgumentError("word JSON must be an array");
    Word w;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer())
            throw ArgumentError("word JSON entries must be [letter, index]");
        w.gens.push_back(Generator{alphabet.letter(e[0].get<std::string>()), e[1].get<Index>()});
    }
    return w;
}

json poly_to_json(const NcPoly& p, const Alphabet& alphabet, std::optional<OrderSpec> order)
{
    json arr = json::array();
    for (const auto* t : sorted_terms(p, order))
        arr.push_back({{"coeff", t->second.str()}, {"word", word_to_json(t->first, alphabet)}});
    return arr;
}

NcPoly poly_from_json(const json& j, const Alphabet& alphabet)
{
    if (!j.is_array()) throw ArgumentError("polynomial JSON must be an array");
    NcPoly p;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("coeff") || !e.contains("word"))
            throw ArgumentError("polynomial JSON entries must have coeff and word");
        p.add_term(word_from_json(e["word"], alphabet),
                   Rational::from_string(e["coeff"].get<std::string>()));
    }
    return p;
}

}  // namespace confree
