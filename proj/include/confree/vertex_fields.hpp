#pragma once

#include <map>
#include <memory>
#include <string>

#include <json.hpp>

#include "confree/lie_conformal.hpp"

namespace confree {

/// Expression tree over the fields on V: generator fields, the identity
/// field, circle products for any integer n, and the derivation D = d/dz.
class CircleExpr {
public:
    enum class Kind { gen, one, circle, der };

    static CircleExpr gen(Letter l);
    static CircleExpr one();
    static CircleExpr circle(CircleExpr left, Index n, CircleExpr right);
    static CircleExpr der(CircleExpr arg);

    Kind kind() const;
    Letter letter() const;       // gen only
    Index n() const;             // circle only
    CircleExpr left() const;     // circle only
    CircleExpr right() const;    // circle only
    CircleExpr arg() const;      // der only
    const void* id() const;      // stable node identity, used for memoization

    friend bool operator==(const CircleExpr& a, const CircleExpr& b);

private:
    struct Node;
    explicit CircleExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

/// Text syntax: `a`, `1`, `D(e)`, `(e1 o{n} e2)`, e.g. `(a o{-2} 1)`.
/// The name `D` is reserved for the derivation.
CircleExpr parse_circle_expr(const std::string& text, const Alphabet& alphabet);
std::string render_circle_expr(const CircleExpr& e, const Alphabet& alphabet);
json circle_expr_to_json(const CircleExpr& e, const Alphabet& alphabet);
CircleExpr circle_expr_from_json(const json& j, const Alphabet& alphabet);

/// Conservative annihilation bound: act(a(t), v) = 0 for every t >= the
/// returned value. Derived from the index-gap condition on terminal words.
Index annihilation_bound(Letter letter, const VertexVector& v, const LieConfContext& ctx);

/// Evaluates coefficients of field expressions on vectors of V. Results are
/// memoized per (node, coefficient index, basis word). `bound_slack` widens
/// every truncation range; results must not depend on it (the sums it adds
/// are provably zero), which the tests assert.
class FieldEvaluator {
public:
    explicit FieldEvaluator(const LieConfContext& ctx, Index bound_slack = 0);

    /// Smallest T this evaluator certifies with eval_coeff(e, t, v) = 0 for
    /// all t >= T.
    Index expr_bound(const CircleExpr& e, const VertexVector& v);

    VertexVector eval_coeff(const CircleExpr& e, Index m, const VertexVector& v);

    /// eval_coeff(e, -1, vacuum): the state of the field.
    VertexVector state(const CircleExpr& e);

    const LieConfContext& context() const { return ctx_; }

private:
    VertexVector eval_word(const CircleExpr& e, Index m, const Word& w);
    Index word_bound(const CircleExpr& e, const Word& w);

    struct EvalKey {
        const void* node;
        Index m;
        Word word;
        bool operator==(const EvalKey&) const = default;
    };
    struct EvalKeyHash {
        std::size_t operator()(const EvalKey& k) const;
    };

    const LieConfContext& ctx_;
    Index slack_;
    // memo keys carry node addresses, so every expression that enters the
    // evaluator is retained to keep those addresses alive and unique
    std::vector<CircleExpr> retained_;
    std::unordered_map<EvalKey, VertexVector, EvalKeyHash> eval_memo_;
    std::unordered_map<EvalKey, Index, EvalKeyHash> bound_memo_;  // m unused
};

/// Quasisymmetry at state level: a o(n) b against the D-twisted sum of
/// b o(n+s) a. Exact equality of vertex vectors; requires n >= 0.
bool check_quasisym(Letter a, Letter b, Index n, const LieConfContext& ctx);

/// Conformal Jacobi identity at state level for n, m >= 0. Strong mode also
/// compares coefficients on a small sample of vectors.
bool check_conformal_jacobi(Letter a, Letter b, Letter c, Index n, Index m,
                            const LieConfContext& ctx, bool strong = false);

/// act(a(n), v) against the field-coefficient route; when v is the embedding
/// of a generator c, also checks the circle-product interpretation
/// act(a(n), psi(c)) = state(a o(n) c).
bool check_module_consistency(Letter a, Index n, const VertexVector& v,
                              const LieConfContext& ctx);

}  // namespace confree
