#include <doctest.h>

#include <set>
#include <vector>

#include "confree/errors.hpp"
#include "confree/io.hpp"
#include "confree/rational.hpp"
#include "confree/terms.hpp"
#include "test_util.hpp"

using namespace confree;
using test_util::g;

TEST_CASE("rational invariants and arithmetic")
{
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(2, -4).denominator() == 2);  // denominator stays positive
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK((Rational(3, 4) / Rational(3, 2)) == Rational(1, 2));
    CHECK(Rational(-7).str() == "-7");
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK(Rational::from_string("-3/6") == Rational(-1, 2));
    CHECK_THROWS_AS(Rational(1, 0), ArgumentError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), ArgumentError);
}

TEST_CASE("gen_binom on both signs of the upper argument")
{
    CHECK(gen_binom(3, 1) == Rational(3));
    CHECK(gen_binom(-1, 2) == Rational(1));
    CHECK(gen_binom(-2, 3) == Rational(-4));  // (-2)(-3)(-4)/3!
    CHECK(gen_binom(5, 0) == Rational(1));
    CHECK(gen_binom(0, 0) == Rational(1));
    CHECK(gen_binom(2, 5) == Rational(0));  // 0 <= n < k
    CHECK(gen_binom(4, 2) == Rational(6));
    CHECK(gen_binom(-3, 1) == Rational(-3));
    CHECK_THROWS_AS(gen_binom(3, -1), ArgumentError);
}

TEST_CASE("gen_binom satisfies the Pascal identity")
{
    for (Index n = -6; n <= 6; ++n)
        for (Index k = 1; k <= 6; ++k)
            CHECK(gen_binom(n, k) == gen_binom(n - 1, k) + gen_binom(n - 1, k - 1));
}

TEST_CASE("factorial")
{
    CHECK(factorial(0) == Rational(1));
    CHECK(factorial(5) == Rational(120));
    CHECK_THROWS_AS(factorial(-1), ArgumentError);
}

TEST_CASE("generator order, lie mode")
{
    CHECK(compare_generators(g(0, -1), g(0, 0), GenOrder::lie) < 0);
    CHECK(compare_generators(g(0, 0), g(1, 0), GenOrder::lie) < 0);  // a < b at equal index
    CHECK(compare_generators(g(1, -1), g(0, 0), GenOrder::lie) < 0);  // index dominates letter
    CHECK(compare_generators(g(0, 3), g(0, 3), GenOrder::lie) == 0);
}

TEST_CASE("generator order, assoc mode")
{
    // a(0) < a(-1) < a(1) < a(-2) < a(2) < ...
    std::vector<Index> chain = {0, -1, 1, -2, 2, -3, 3};
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        CHECK(compare_generators(g(0, chain[i]), g(0, chain[i + 1]), GenOrder::assoc) < 0);

    CHECK(compare_generators(g(0, -1), g(0, 1), GenOrder::assoc) < 0);
    // a(2) vs b(-2) with a < b: positive index wins at equal absolute value
    CHECK(compare_generators(g(0, 2), g(1, -2), GenOrder::assoc) > 0);
    // letters decide only at exactly equal index
    CHECK(compare_generators(g(0, 2), g(1, 2), GenOrder::assoc) < 0);
}

TEST_CASE("word orders")
{
    Word a0({g(0, 0)});
    Word a0a0({g(0, 0), g(0, 0)});
    Word b0({g(1, 0)});
    Word b0a0({g(1, 0), g(0, 0)});
    Word a0b0({g(0, 0), g(1, 0)});

    CHECK(compare_words(a0, a0a0, kLieOrder) < 0);  // shorter first
    CHECK(compare_words(b0, b0a0, kLyndonOrder) > 0);  // proper prefix is greater
    CHECK(compare_words(a0b0, b0a0, kLyndonOrder) < 0);
    CHECK(compare_words(a0b0, a0b0, kLyndonOrder) == 0);
    CHECK(compare_words(Word(), a0, kLieOrder) < 0);
}

TEST_CASE("orders are strict total orders on random samples")
{
    test_util::Rng rng(12345);
    std::vector<Word> sample;
    for (int i = 0; i < 40; ++i) sample.push_back(rng.random_word(3, 4, -3, 3));

    for (OrderSpec spec : {kLieOrder, kAssocOrder, kLyndonOrder,
                           OrderSpec{GenOrder::assoc, WordOrder::lyndon_prefix}}) {
        for (const auto& x : sample)
            for (const auto& y : sample) {
                auto xy = compare_words(x, y, spec);
                auto yx = compare_words(y, x, spec);
                if (x == y) {
                    CHECK(xy == 0);
                } else {
                    CHECK(xy != 0);
                }
                CHECK((xy < 0) == (yx > 0));  // antisymmetry
                for (const auto& z : sample) {  // transitivity
                    if (xy <= 0 && compare_words(y, z, spec) <= 0)
                        CHECK(compare_words(x, z, spec) <= 0);
                }
            }
    }
}

TEST_CASE("poly multiplication and commutator")
{
    auto alpha = test_util::two_letters();
    NcPoly p = parse_poly("a(0)", alpha);
    NcPoly q = parse_poly("b(1)", alpha);
    CHECK(p * q == parse_poly("a(0)*b(1)", alpha));

    CHECK(parse_poly("2*a(0) - b(0)", alpha) * parse_poly("a(0)", alpha) ==
          parse_poly("2*a(0)*a(0) - b(0)*a(0)", alpha));

    CHECK(p * NcPoly::unit() == p);
    CHECK(NcPoly::unit() * p == p);

    CHECK(poly_commutator(p, p).is_zero());
    CHECK(poly_commutator(parse_poly("b(0)", alpha), parse_poly("a(0)", alpha)) ==
          parse_poly("b(0)*a(0) - a(0)*b(0)", alpha));
    // bilinearity
    CHECK(poly_commutator(parse_poly("a(1) + a(2)", alpha), parse_poly("a(0)", alpha)) ==
          poly_commutator(parse_poly("a(1)", alpha), parse_poly("a(0)", alpha)) +
              poly_commutator(parse_poly("a(2)", alpha), parse_poly("a(0)", alpha)));
}

TEST_CASE("poly laws on random inputs")
{
    test_util::Rng rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        NcPoly p = rng.random_poly(2, 3, 3, -2, 2);
        NcPoly q = rng.random_poly(2, 3, 3, -2, 2);
        NcPoly r = rng.random_poly(2, 3, 3, -2, 2);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(poly_commutator(p, q) == -poly_commutator(q, p));

        NcPoly diff = (p + q) - q;
        for (const auto& [w, c] : diff.terms()) CHECK(!c.is_zero());
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("leading_word")
{
    auto alpha = test_util::two_letters();
    NcPoly p = parse_poly("b(0)*a(0) - a(0)*b(0)", alpha);
    auto [w, c] = leading_word(p, kLyndonOrder);
    CHECK(w == test_util::word({g(1, 0), g(0, 0)}));
    CHECK(c == Rational(1));

    auto [w2, c2] = leading_word(parse_poly("3*a(1)", alpha), kLieOrder);
    CHECK(w2 == Word::single(g(0, 1)));
    CHECK(c2 == Rational(3));

    CHECK_THROWS_AS(leading_word(NcPoly::zero(), kLieOrder), ArgumentError);
}

TEST_CASE("polynomial text grammar")
{
    auto alpha = test_util::two_letters();

    CHECK(parse_poly("a(1)*a(0)", alpha) ==
          NcPoly::term(test_util::word({g(0, 1), g(0, 0)}), Rational(1)));
    NcPoly two_terms = parse_poly("2*a(0) - 1/2*b(-1)", alpha);
    CHECK(two_terms.term_count() == 2);
    CHECK(two_terms.coeff(Word::single(g(0, 0))) == Rational(2));
    CHECK(two_terms.coeff(Word::single(g(1, -1))) == Rational(-1, 2));

    // whitespace-insensitive, juxtaposition also multiplies
    CHECK(parse_poly(" 2 a(0) a(1) ", alpha) == parse_poly("2*a(0)*a(1)", alpha));
    CHECK(parse_poly("1", alpha) == NcPoly::unit());
    CHECK(parse_poly("0", alpha).is_zero());
    CHECK(parse_poly("a(0) - a(0)", alpha).is_zero());

    CHECK_THROWS_AS(parse_poly("a(1.5)", alpha), ParseError);
    CHECK_THROWS_AS(parse_poly("c(1)", alpha), ParseError);
    CHECK_THROWS_AS(parse_poly("a(1", alpha), ParseError);
    CHECK_THROWS_AS(parse_poly("", alpha), ParseError);
}

TEST_CASE("render/parse round trip on canonical output")
{
    auto alpha = test_util::two_letters();
    test_util::Rng rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        NcPoly p = rng.random_poly(2, 4, 3, -3, 3);
        CHECK(parse_poly(render_poly(p, alpha), alpha) == p);
        CHECK(parse_poly(render_poly(p, alpha, kLieOrder), alpha) == p);
    }
    CHECK(render_poly(NcPoly::zero(), alpha) == "0");
    CHECK(render_poly(NcPoly::unit(), alpha) == "1");
    CHECK(render_poly(-NcPoly::unit(), alpha) == "-1");
}

TEST_CASE("word and poly JSON round trip")
{
    auto alpha = test_util::two_letters();
    test_util::Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Word w = rng.random_word(2, 4, -3, 3);
        CHECK(word_from_json(word_to_json(w, alpha), alpha) == w);
        NcPoly p = rng.random_poly(2, 4, 3, -3, 3);
        CHECK(poly_from_json(poly_to_json(p, alpha), alpha) == p);
    }
    CHECK(word_to_json(Word(), alpha) == json::array());
}
