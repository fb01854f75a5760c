#include <doctest.h>

#include "confree/errors.hpp"
#include "confree/series_oracle.hpp"

using namespace confree;

namespace {

const DiffAssocAlgebra kAssoc{};
const DiffLieAlgebra kLie{};

QPoly T(const std::string& s) { return parse_qpoly(s); }

}  // namespace

TEST_CASE("qpoly arithmetic and parsing")
{
    CHECK(T("t") == QPoly::t());
    CHECK(T("2*t^2 - 1/2*t + 1") == T("1") + T("2*t^2") - T("1/2 t"));
    CHECK((T("t") * T("t")) == T("t^2"));
    CHECK(T("t^3").derivative() == T("3*t^2"));
    CHECK(T("t^2").derivative(3).is_zero());
    CHECK(T("t^2 - t^2").is_zero());
    CHECK(T("2*t^2 - 1/2*t + 1").str() == "2*t^2 - 1/2*t + 1");
    CHECK_THROWS_AS(parse_qpoly(""), ParseError);
    CHECK_THROWS_AS(parse_qpoly("x"), ParseError);
}

TEST_CASE("differential operator product")
{
    DiffOp t0 = DiffOp::term(T("t"), 0);
    CHECK(diffop_mul(t0, t0) == DiffOp::term(T("t^2"), 0));

    // delta . t = t delta + 1
    DiffOp delta = DiffOp::term(T("1"), 1);
    CHECK(diffop_mul(delta, t0) == DiffOp::term(T("t"), 1) + DiffOp::term(T("1"), 0));

    // delta and its inverse
    DiffOp delta_inv = DiffOp::term(T("1"), -1);
    CHECK(diffop_mul(delta, delta_inv) == DiffOp::term(T("1"), 0));
    CHECK(diffop_mul(delta_inv, delta) == DiffOp::term(T("1"), 0));

    // associativity spot check with negative powers
    DiffOp x = DiffOp::term(T("t^2"), -1);
    DiffOp y = DiffOp::term(T("t"), 2);
    DiffOp z = DiffOp::term(T("1 + t"), 0);
    CHECK(diffop_mul(diffop_mul(x, y), z) == diffop_mul(x, diffop_mul(y, z)));
}

TEST_CASE("tilde series and windows")
{
    DiffSeries s = tilde_diff(T("t"), -3, 3);
    CHECK(s.at(2) == DiffOp::term(T("t"), 2));
    CHECK(s.at(-3) == DiffOp::term(T("t"), -3));
    CHECK_THROWS_AS(s.at(4), WindowError);
    CHECK_THROWS_AS(tilde_diff(T("t"), 3, -3), ArgumentError);

    LoopAlgebra sl2 = LoopAlgebra::sl2();
    LoopSeries e = tilde_loop(sl2, sl2.basis_vec(0), -2, 2);
    CHECK(e.at(1) == LoopElem::term(sl2.basis_vec(0), 1));
}

TEST_CASE("circle products on realizations")
{
    SUBCASE("diff-assoc: t o{1} t^2 = (t * 2t)~")
    {
        auto lhs = circle_pos(kAssoc, tilde_diff(T("t"), -4, 4), 1, tilde_diff(T("t^2"), -4, 4));
        auto rhs = tilde_diff(T("2*t^2"), -4, 4);
        CHECK(series_equal(lhs, rhs));
        CHECK(lhs.lo == -4);
        CHECK(lhs.hi == 3);  // shrunk by n
    }

    SUBCASE("loop sl2: e o{0} f = h")
    {
        LoopAlgebra sl2 = LoopAlgebra::sl2();
        LoopLieAlgebra loop{&sl2};
        auto e = tilde_loop(sl2, sl2.basis_vec(0), -4, 4);
        auto f = tilde_loop(sl2, sl2.basis_vec(2), -4, 4);
        auto h = tilde_loop(sl2, sl2.basis_vec(1), -4, 4);
        CHECK(series_equal(circle_pos(loop, e, 0, f), h));
        CHECK(circle_pos(loop, e, 1, f).is_zero_on_window());
        CHECK(circle_pos(loop, e, 3, f).is_zero_on_window());
    }

    SUBCASE("window errors")
    {
        auto x = tilde_diff(T("t"), 1, 4);  // does not cover [0, n]
        CHECK_THROWS_AS(circle_pos(kLie, x, 0, x), WindowError);
        auto y = tilde_diff(T("t"), 0, 2);
        CHECK_THROWS_AS(circle_pos(kLie, y, 3, y), WindowError);
    }
}

TEST_CASE("locality orders")
{
    SUBCASE("loop generators are local of order 1")
    {
        LoopAlgebra sl2 = LoopAlgebra::sl2();
        LoopLieAlgebra loop{&sl2};
        auto e = tilde_loop(sl2, sl2.basis_vec(0), -5, 5);
        auto f = tilde_loop(sl2, sl2.basis_vec(2), -5, 5);
        CHECK(locality_order(loop, e, f, 4) == 1);
        CHECK(locality_order(loop, e, e, 4) == 0);  // [e,e] = 0 throughout
    }

    SUBCASE("the Virasoro generator is local of order 2")
    {
        auto u = tilde_diff(T("t"), -6, 6);
        CHECK(locality_order(kLie, u, u, 5) == 2);
    }

    SUBCASE("the zero series is local of order 0")
    {
        DiffSeries zero;
        zero.lo = -3;
        zero.hi = 3;
        auto u = tilde_diff(T("t"), -3, 3);
        CHECK(locality_order(kLie, zero, u, 3) == 0);
    }

    SUBCASE("assoc realization is not symmetric in general")
    {
        auto one = tilde_diff(T("1"), -5, 5);
        auto t = tilde_diff(T("t"), -5, 5);
        // 1~ o{n} t~ = (1 * delta^n t)~ vanishes for n >= 2
        CHECK(locality_order(kAssoc, one, t, 5) == 2);
    }
}

TEST_CASE("reconstruction of products from circle products")
{
    LoopAlgebra sl2 = LoopAlgebra::sl2();
    LoopLieAlgebra loop{&sl2};
    auto e = tilde_loop(sl2, sl2.basis_vec(0), -8, 8);
    auto f = tilde_loop(sl2, sl2.basis_vec(2), -8, 8);
    CHECK(check_reconstruction(loop, e, 0, f, -1));
    CHECK(check_reconstruction(loop, e, 2, f, -1));
    CHECK(check_reconstruction(loop, e, 3, f, 2));

    auto u = tilde_diff(T("t"), -8, 8);
    for (Index k = 0; k <= 3; ++k)
        for (Index l = -3; l <= 3; ++l) CHECK(check_reconstruction(kLie, u, k, u, l));
}

TEST_CASE("virasoro relations")
{
    auto report = virasoro_check(-6, 6, 5);
    CHECK(report.ok);
    CHECK(report.product0);
    CHECK(report.product1);
    CHECK(report.failed_zero.empty());

    // coefficient shape of the o{1} relation: 2 t delta^m
    DiffSeries u = tilde_diff(T("t"), -6, 6);
    auto p1 = circle_pos(kLie, u, 1, u);
    CHECK(p1.at(0) == DiffOp::term(T("2*t"), 0));
    // and o{0} matches -m t delta^(m-1)
    auto p0 = circle_pos(kLie, u, 0, u);
    CHECK(p0.at(2) == DiffOp::term(T("-2*t"), 1));
}

TEST_CASE("identity checks on realizations")
{
    SUBCASE("diffass")
    {
        CHECK(check_diffass(T("t^2"), T("t^3"), 2, -6, 6));  // t^2 * 6t = 6t^3
        CHECK(check_diffass(T("t"), T("t"), 0, -6, 6));
        CHECK(check_diffass(T("1 + t"), T("t^2"), 1, -6, 6));
    }

    SUBCASE("difflie")
    {
        for (Index n = 0; n <= 3; ++n) {
            CHECK(check_difflie(T("t"), T("t"), n, -8, 8));
            CHECK(check_difflie(T("t^2"), T("t"), n, -8, 8));
            CHECK(check_difflie(T("t"), T("t^2 + 1"), n, -8, 8));
        }
    }

    SUBCASE("assconf on the associative realization")
    {
        auto x = tilde_diff(T("t"), -8, 8);
        auto y = tilde_diff(T("t^2"), -8, 8);
        auto z = tilde_diff(T("1 + t"), -8, 8);
        for (Index n = 0; n <= 2; ++n)
            for (Index m = 0; m <= 2; ++m) CHECK(check_assconf(kAssoc, x, n, y, m, z));
    }

    SUBCASE("jacconf on the loop realization reduces to the Jacobi identity")
    {
        LoopAlgebra sl2 = LoopAlgebra::sl2();
        LoopLieAlgebra loop{&sl2};
        auto e = tilde_loop(sl2, sl2.basis_vec(0), -8, 8);
        auto h = tilde_loop(sl2, sl2.basis_vec(1), -8, 8);
        auto f = tilde_loop(sl2, sl2.basis_vec(2), -8, 8);
        CHECK(check_jacconf(loop, e, 0, f, 0, h));
        CHECK(check_jacconf(loop, h, 0, e, 0, f));
    }

    SUBCASE("jacconf on the Lie differential realization")
    {
        auto u = tilde_diff(T("t"), -8, 8);
        auto v = tilde_diff(T("t^2"), -8, 8);
        for (Index n = 0; n <= 2; ++n)
            for (Index m = 0; m <= 2; ++m) {
                CHECK(check_jacconf(kLie, u, n, u, m, u));
                CHECK(check_jacconf(kLie, u, n, v, m, u));
            }
    }

    SUBCASE("quasisym on the Lie realizations")
    {
        auto u = tilde_diff(T("t"), -8, 8);
        CHECK(check_quasisym_series(kLie, u, 0, u));
        CHECK(check_quasisym_series(kLie, u, 1, u));

        LoopAlgebra sl2 = LoopAlgebra::sl2();
        LoopLieAlgebra loop{&sl2};
        auto e = tilde_loop(sl2, sl2.basis_vec(0), -8, 8);
        auto f = tilde_loop(sl2, sl2.basis_vec(2), -8, 8);
        CHECK(check_quasisym_series(loop, e, 0, f));
    }
}

TEST_CASE("dong bounds")
{
    SUBCASE("loop sl2, all pairwise orders 1")
    {
        LoopAlgebra sl2 = LoopAlgebra::sl2();
        LoopLieAlgebra loop{&sl2};
        auto e = tilde_loop(sl2, sl2.basis_vec(0), -8, 8);
        auto h = tilde_loop(sl2, sl2.basis_vec(1), -8, 8);
        auto f = tilde_loop(sl2, sl2.basis_vec(2), -8, 8);
        CHECK(dong_bound_check(loop, e, f, h, 0));
        CHECK(dong_bound_check(loop, e, h, f, 0));
    }

    SUBCASE("diff-lie, order 2 throughout")
    {
        auto u = tilde_diff(T("t"), -10, 10);
        auto v = tilde_diff(T("t^2"), -10, 10);
        CHECK(dong_bound_check(kLie, u, u, u, 0));
        CHECK(dong_bound_check(kLie, u, u, u, 1));
        CHECK(dong_bound_check(kLie, u, v, u, 1));
    }

    SUBCASE("associative bounds")
    {
        auto x = tilde_diff(T("t"), -10, 10);
        auto y = tilde_diff(T("t^2"), -10, 10);
        auto z = tilde_diff(T("1 + t"), -10, 10);
        CHECK(dong_bound_check(kAssoc, x, y, z, 0));
        CHECK(dong_bound_check(kAssoc, x, y, z, 1));
    }
}

TEST_CASE("weak locality closure under d/dz and z-shift")
{
    // each d/dz raises the locality order by at most one; multiplication by
    // z does not raise it
    auto u = tilde_diff(T("t"), -8, 8);
    auto v = tilde_diff(T("t^2"), -8, 8);
    auto base = locality_order(kLie, u, v, 6);
    REQUIRE(base.has_value());
    for (int dx = 0; dx <= 1; ++dx)
        for (int dy = 0; dy <= 1; ++dy) {
            auto x = dx ? series_derivative(u) : series_shift_z(u);
            auto y = dy ? series_derivative(v) : series_shift_z(v);
            auto order = locality_order(kLie, x, y, *base + dx + dy);
            CHECK(order.has_value());
        }
    CHECK(locality_order(kLie, series_derivative(u), v, *base + 1).has_value());
    CHECK(locality_order(kLie, u, series_shift_z(v), *base).has_value());
    CHECK(locality_order(kLie, series_shift_z(u), series_shift_z(v), *base).has_value());
}

TEST_CASE("window monotonicity: enlarging the window never flips a pass")
{
    for (auto [lo, hi] : {std::pair<Index, Index>{-5, 5}, {-8, 8}, {-12, 12}}) {
        CHECK(virasoro_check(lo, hi, 4).ok);
        CHECK(check_difflie(T("t"), T("t"), 1, lo, hi));
        auto u = tilde_diff(T("t"), lo, hi);
        CHECK(locality_order(kLie, u, u, 4) == 2);
    }
}

TEST_CASE("structure constant validation")
{
    CHECK_NOTHROW(LoopAlgebra::sl2());

    // not antisymmetric
    CHECK_THROWS_AS(LoopAlgebra::from_json(json{
                        {"basis", {"x", "y"}},
                        {"brackets", {{"x,y", {{"x", 1}}}, {"y,x", {{"x", 1}}}}}}),
                    ArgumentError);

    // violates Jacobi: [x,y]=z, [y,z]=x, [z,x]=x
    CHECK_THROWS_AS(LoopAlgebra::from_json(json{
                        {"basis", {"x", "y", "z"}},
                        {"brackets",
                         {{"x,y", {{"z", 1}}}, {"y,z", {{"x", 1}}}, {"z,x", {{"x", 1}}}}}}),
                    ArgumentError);

    // grading must be respected
    CHECK_THROWS_AS(LoopAlgebra::from_json(json{
                        {"basis", {"e", "h", "f"}},
                        {"brackets",
                         {{"e,f", {{"h", 1}}}, {"h,e", {{"e", 2}}}, {"h,f", {{"f", -2}}}}},
                        {"p", 2},
                        {"grades", {{"e", 1}, {"h", 1}, {"f", 1}}}}),
                    ArgumentError);
}

TEST_CASE("twisted loop algebra, p = 2")
{
    LoopAlgebra g = LoopAlgebra::sl2_twisted();
    LoopLieAlgebra loop{&g};

    auto e = tilde_loop(g, g.basis_vec(0), -5, 5);
    auto h = tilde_loop(g, g.basis_vec(1), -5, 5);
    auto f = tilde_loop(g, g.basis_vec(2), -5, 5);

    // e + h is not homogeneous
    LoopAlgebra::Vec mixed = g.basis_vec(0);
    mixed[1] = Rational(1);
    CHECK_THROWS_AS(tilde_loop(g, mixed, -5, 5), ArgumentError);

    // gradings place coefficients on t^(2j+k)
    CHECK(e.at(0) == LoopElem::term(g.basis_vec(0), 1));
    CHECK(h.at(0) == LoopElem::term(g.basis_vec(1), 0));

    // e o{0} f lands in grade 0 with k+l >= p, so it is z (ad e f)~
    auto ef = circle_pos(loop, e, 0, f);
    auto had = tilde_loop(g, g.basis_vec(1), -5, 5);
    CHECK(series_equal(ef, series_shift_z(had)));

    // h o{0} e has k+l = 1 < p: plain (ad h e)~
    auto he = circle_pos(loop, h, 0, e);
    LoopAlgebra::Vec two_e = g.basis_vec(0);
    two_e[0] = Rational(2);
    CHECK(series_equal(he, tilde_loop(g, two_e, -5, 5)));

    CHECK(locality_order(loop, e, f, 4) == 1);
    CHECK(check_jacconf(loop, e, 0, f, 0, h));
    CHECK(check_quasisym_series(loop, e, 0, f));
}
