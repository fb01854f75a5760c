// confree: exact computations in free conformal and vertex algebras.
//
// Subcommands: reduce, basis, confluence, dim, hall, oracle. All output is
// deterministic: identical invocations produce byte-identical reports
// regardless of CONFREE_THREADS.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "confree/assoc_conformal.hpp"
#include "confree/errors.hpp"
#include "confree/hall_lyndon.hpp"
#include "confree/io.hpp"
#include "confree/lie_conformal.hpp"
#include "confree/rewrite.hpp"
#include "confree/series_oracle.hpp"
#include "confree/vertex_fields.hpp"

using namespace confree;

namespace {

struct CommonOpts {
    std::string letters = "a";
    std::string mode = "lie";
    std::optional<Index> constant_n;
    std::string locality_file;
    std::string window;
    std::string format = "text";
    long step_limit = kDefaultStepLimit;
};

int thread_count()
{
    const char* env = std::getenv("CONFREE_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : (n > 64 ? 64 : n);
}

Alphabet parse_letters(const std::string& spec)
{
    std::vector<std::string> names;
    std::string current;
    for (char c : spec) {
        if (c == ',') {
            names.push_back(current);
            current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            current += c;
        }
    }
    names.push_back(current);
    return Alphabet(names);
}

std::pair<Index, Index> parse_window(const std::string& spec)
{
    auto sep = spec.find("..");
    if (sep == std::string::npos)
        throw ArgumentError("window must be 'lo..hi', got '" + spec + "'");
    try {
        Index lo = std::stoll(spec.substr(0, sep));
        Index hi = std::stoll(spec.substr(sep + 2));
        if (lo > hi) throw ArgumentError("window is empty: '" + spec + "'");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw ArgumentError("window must be 'lo..hi', got '" + spec + "'");
    } catch (const std::out_of_range&) {
        throw ArgumentError("window bounds out of range: '" + spec + "'");
    }
}

LocalityFn load_locality(const CommonOpts& opts, const Alphabet& alphabet)
{
    if (opts.constant_n && !opts.locality_file.empty())
        throw ArgumentError("give either --N or --locality, not both");
    if (opts.constant_n) return LocalityFn::constant(*opts.constant_n);
    if (!opts.locality_file.empty()) {
        std::ifstream in(opts.locality_file);
        if (!in) throw ArgumentError("cannot open locality file '" + opts.locality_file + "'");
        json j;
        in >> j;
        return LocalityFn::from_json(alphabet, j);
    }
    throw ArgumentError("a locality is required: --N for a constant, --locality for a table");
}

std::string alphabet_order(const Alphabet& alphabet)
{
    std::string out;
    for (Letter l : alphabet.letters()) {
        if (!out.empty()) out += "<";
        out += alphabet.name(l);
    }
    return out;
}

json config_json(const CommonOpts& opts, const Alphabet& alphabet, const LocalityFn* locality)
{
    json cfg{{"letters", alphabet_order(alphabet)}, {"mode", opts.mode}};
    if (locality) cfg["locality"] = locality->to_json(alphabet);
    if (!opts.window.empty()) cfg["window"] = opts.window;
    return cfg;
}

void print_config(std::ostream& os, const std::string& command, const CommonOpts& opts,
                  const Alphabet& alphabet, const LocalityFn* locality)
{
    os << "# command: " << command << "\n";
    os << "# letters: " << alphabet_order(alphabet) << "\n";
    os << "# mode: " << opts.mode << "\n";
    if (locality) {
        if (locality->is_constant())
            os << "# N: " << locality->constant_value() << "\n";
        else
            os << "# locality: " << locality->to_json(alphabet)["pairs"].dump() << "\n";
    }
    if (!opts.window.empty()) os << "# window: " << opts.window << "\n";
}

struct ModeContext {
    Alphabet alphabet;
    LocalityFn locality;
    RuleSet rules;
    std::optional<LieConfContext> lie;      // set in lie mode
    std::optional<AssocConfContext> assoc;  // set in assoc mode
};

ModeContext make_mode_context(const CommonOpts& opts)
{
    Alphabet alphabet = parse_letters(opts.letters);
    LocalityFn locality = load_locality(opts, alphabet);
    if (opts.mode == "lie") {
        if (!locality.is_constant())
            throw ArgumentError("lie mode needs a constant locality (--N)");
        auto ctx = LieConfContext::make(alphabet, locality.constant_value());
        RuleSet rules = ctx.rules;
        return ModeContext{std::move(alphabet), std::move(locality), std::move(rules),
                           std::move(ctx), std::nullopt};
    }
    if (opts.mode == "assoc") {
        auto ctx = AssocConfContext::make(alphabet, locality);
        RuleSet rules = ctx.rules;
        return ModeContext{std::move(alphabet), std::move(locality), std::move(rules),
                           std::nullopt, std::move(ctx)};
    }
    throw ArgumentError("unknown mode '" + opts.mode + "'");
}

// ---- commands ----

int cmd_reduce(const CommonOpts& opts, const std::string& poly_text, bool trace)
{
    ModeContext mc = make_mode_context(opts);
    NcPoly input = parse_poly(poly_text, mc.alphabet);

    NcPoly normal;
    json trace_json = json::array();
    std::ostringstream trace_text;
    if (trace) {
        normal = NcPoly();
        for (const auto& [w, c] : input.terms()) {
            auto traced = reduce_word_traced(w, mc.rules, opts.step_limit);
            normal += c * traced.normal_form;
            json steps = trace_to_json(traced, mc.alphabet);
            trace_json.push_back(
                {{"word", word_to_json(w, mc.alphabet)}, {"steps", steps}});
            trace_text << "word " << render_word(w, mc.alphabet) << ": " << traced.steps.size()
                       << " applications\n";
            for (const auto& s : traced.steps)
                trace_text << "  at " << s.position << " rewrite "
                           << render_word(s.principal, mc.alphabet) << " -> "
                           << s.replacement_terms << " terms\n";
        }
    } else {
        normal = reduce_poly(input, mc.rules, opts.step_limit);
    }

    const OrderSpec& order = mc.rules.order();
    if (opts.format == "json") {
        json out{{"command", "reduce"},
                 {"config", config_json(opts, mc.alphabet, &mc.locality)},
                 {"input", poly_to_json(input, mc.alphabet, order)},
                 {"normal_form", poly_to_json(normal, mc.alphabet, order)}};
        if (trace) out["trace"] = trace_json;
        std::cout << out.dump(2) << "\n";
    } else {
        print_config(std::cout, "reduce", opts, mc.alphabet, &mc.locality);
        std::cout << "input: " << render_poly(input, mc.alphabet, order) << "\n";
        if (trace) std::cout << trace_text.str();
        std::cout << "normal form: " << render_poly(normal, mc.alphabet, order) << "\n";
    }
    return 0;
}

int cmd_basis(const CommonOpts& opts, const std::string& space, int length,
              std::optional<Index> sum)
{
    ModeContext mc = make_mode_context(opts);
    std::vector<Word> words;

    if (space == "ul" || space == "vertex") {
        if (!mc.lie) throw ArgumentError("--space " + space + " needs --mode lie");
        if (opts.window.empty()) throw ArgumentError("--space " + space + " needs --window");
        auto [lo, hi] = parse_window(opts.window);
        words = enum_basis_UL(*mc.lie, length, lo, hi, sum);
        if (space == "vertex") {
            std::erase_if(words, [&](const Word& w) { return !is_vertex_word(w, *mc.lie); });
        }
    } else if (space == "ulplus") {
        if (!mc.lie) throw ArgumentError("--space ulplus needs --mode lie");
        if (!sum) throw ArgumentError("--space ulplus needs --sum");
        words = enum_basis_ULplus(*mc.lie, length, *sum);
    } else if (space == "a" || space == "aplus") {
        if (!mc.assoc) throw ArgumentError("--space " + space + " needs --mode assoc");
        if (!sum) throw ArgumentError("--space " + space + " needs --sum");
        if (space == "a") {
            words = enum_basis_A_all(*mc.assoc, length, *sum);
        } else {
            // enumerate over all letter sequences of the given length
            std::vector<Word> collected;
            std::vector<Letter> seq;
            auto rec = [&](auto&& self) -> void {
                if (static_cast<int>(seq.size()) == length) {
                    auto part = enum_basis_Aplus(*mc.assoc, seq, *sum);
                    collected.insert(collected.end(), part.begin(), part.end());
                    return;
                }
                for (Letter l : mc.alphabet.letters()) {
                    seq.push_back(l);
                    self(self);
                    seq.pop_back();
                }
            };
            rec(rec);
            std::sort(collected.begin(), collected.end(), [](const Word& x, const Word& y) {
                return compare_words(x, y, kAssocOrder) > 0;
            });
            words = std::move(collected);
        }
    } else {
        throw ArgumentError("unknown space '" + space + "' (ul, ulplus, vertex, a, aplus)");
    }

    if (opts.format == "json") {
        json rows = json::array();
        for (const auto& w : words) rows.push_back(word_to_json(w, mc.alphabet));
        json out{{"command", "basis"},
                 {"config", config_json(opts, mc.alphabet, &mc.locality)},
                 {"space", space},
                 {"length", length},
                 {"count", words.size()},
                 {"words", rows}};
        if (sum) out["sum"] = *sum;
        std::cout << out.dump(2) << "\n";
    } else {
        print_config(std::cout, "basis", opts, mc.alphabet, &mc.locality);
        std::cout << "# space: " << space << ", length: " << length;
        if (sum) std::cout << ", sum: " << *sum;
        std::cout << "\n";
        for (const auto& w : words) std::cout << render_word(w, mc.alphabet) << "\n";
        std::cout << "count: " << words.size() << "\n";
    }
    return 0;
}

int cmd_confluence(const CommonOpts& opts)
{
    ModeContext mc = make_mode_context(opts);
    if (opts.window.empty()) throw ArgumentError("confluence needs --window");
    auto [lo, hi] = parse_window(opts.window);

    auto report = sweep_confluence(mc.rules, mc.alphabet, lo, hi, thread_count(), opts.step_limit);

    if (opts.format == "json") {
        json failures = json::array();
        for (const auto& [w, witness] : report.failed)
            failures.push_back({{"ambiguity", word_to_json(w, mc.alphabet)},
                                {"via_left", poly_to_json(witness.via_left, mc.alphabet,
                                                          mc.rules.order())},
                                {"via_right", poly_to_json(witness.via_right, mc.alphabet,
                                                           mc.rules.order())}});
        json out{{"command", "confluence"},
                 {"config", config_json(opts, mc.alphabet, &mc.locality)},
                 {"ambiguities", report.ambiguities},
                 {"failures", report.failures},
                 {"failed", failures}};
        std::cout << out.dump(2) << "\n";
    } else {
        print_config(std::cout, "confluence", opts, mc.alphabet, &mc.locality);
        std::cout << "ambiguities: " << report.ambiguities << ", failures: " << report.failures
                  << "\n";
        for (const auto& [w, witness] : report.failed) {
            std::cout << "FAIL " << render_word(w, mc.alphabet)
                      << "\n  via left:  " << render_poly(witness.via_left, mc.alphabet,
                                                          mc.rules.order())
                      << "\n  via right: " << render_poly(witness.via_right, mc.alphabet,
                                                          mc.rules.order())
                      << "\n";
        }
    }
    return report.failures == 0 ? 0 : 1;
}

int cmd_dim(const CommonOpts& opts, int length, const std::string& k_range)
{
    ModeContext mc = make_mode_context(opts);
    if (!mc.assoc) throw ArgumentError("dim needs --mode assoc");
    auto [k_lo, k_hi] = parse_window(k_range);

    std::vector<std::pair<Index, long long>> rows;
    for (Index k = k_lo; k <= k_hi; ++k) rows.emplace_back(k, dim_Akl(*mc.assoc, k, length));

    if (opts.format == "json") {
        json jrows = json::array();
        for (const auto& [k, d] : rows) jrows.push_back({{"k", k}, {"dim", d}});
        json out{{"command", "dim"},
                 {"config", config_json(opts, mc.alphabet, &mc.locality)},
                 {"l", length},
                 {"rows", jrows}};
        std::cout << out.dump(2) << "\n";
    } else {
        print_config(std::cout, "dim", opts, mc.alphabet, &mc.locality);
        for (const auto& [k, d] : rows)
            std::cout << "l=" << length << " k=" << k << ": " << d << "\n";
    }
    return 0;
}

int cmd_hall(const CommonOpts& opts, int max_length, bool vertex)
{
    Alphabet alphabet = parse_letters(opts.letters);
    LocalityFn locality = load_locality(opts, alphabet);
    if (!locality.is_constant()) throw ArgumentError("hall needs a constant locality (--N)");
    auto ctx = LieConfContext::make(alphabet, locality.constant_value());
    if (opts.window.empty()) throw ArgumentError("hall needs --window");
    auto [lo, hi] = parse_window(opts.window);

    if (opts.format == "json") {
        json out{{"command", vertex ? "hall/vertex" : "hall"},
                 {"config", config_json(opts, alphabet, &locality)},
                 {"max_length", max_length}};
        if (vertex) {
            json rows = json::array();
            for (const auto& v : basis_C_in_V(ctx, max_length, lo, hi))
                rows.push_back(vertex_to_json(v, alphabet));
            out["vectors"] = rows;
            out["count"] = rows.size();
        } else {
            json rows = json::array();
            for (const auto& p : basis_L(ctx, max_length, lo, hi)) {
                auto [w, c] = leading_word(p, kLyndonOrder);
                rows.push_back({{"leading", word_to_json(w, alphabet)},
                                {"tree", hall_tree_to_json(bracketing(w), alphabet)},
                                {"normal_form", poly_to_json(p, alphabet, kLieOrder)}});
            }
            out["elements"] = rows;
            out["count"] = rows.size();
        }
        std::cout << out.dump(2) << "\n";
    } else {
        print_config(std::cout, vertex ? "hall/vertex" : "hall", opts, alphabet, &locality);
        std::cout << "# max length: " << max_length << "\n";
        std::size_t count = 0;
        if (vertex) {
            for (const auto& v : basis_C_in_V(ctx, max_length, lo, hi)) {
                std::string line;
                for (const auto& [w, c] : v.terms()) {
                    if (!line.empty()) line += " + ";
                    line += c.str() + "*" + render_word(w, alphabet);
                }
                std::cout << line << "\n";
                ++count;
            }
        } else {
            for (const auto& p : basis_L(ctx, max_length, lo, hi)) {
                auto [w, c] = leading_word(p, kLyndonOrder);
                std::cout << render_word(w, alphabet) << " : "
                          << render_poly(p, alphabet, kLieOrder) << "\n";
                ++count;
            }
        }
        std::cout << "count: " << count << "\n";
    }
    return 0;
}

// ---- oracle ----

struct OracleLine {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
};

int report_oracle(const CommonOpts& opts, const std::string& sub,
                  const std::vector<OracleLine>& lines, const json& extra = json::object())
{
    std::size_t failures = 0;
    for (const auto& l : lines) failures += l.failures;

    if (opts.format == "json") {
        json checks = json::array();
        for (const auto& l : lines)
            checks.push_back({{"check", l.name}, {"cases", l.cases}, {"failures", l.failures}});
        json out{{"command", "oracle " + sub},
                 {"window", opts.window},
                 {"checks", checks},
                 {"failures", failures}};
        for (const auto& [k, v] : extra.items()) out[k] = v;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "# command: oracle " << sub << "\n";
        if (!opts.window.empty()) std::cout << "# window: " << opts.window << "\n";
        for (const auto& l : lines)
            std::cout << l.name << ": cases=" << l.cases << " failures=" << l.failures << "\n";
        std::cout << (failures == 0 ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return failures == 0 ? 0 : 1;
}

LoopAlgebra load_structure(const std::string& file)
{
    if (file.empty()) return LoopAlgebra::sl2();
    std::ifstream in(file);
    if (!in) throw ArgumentError("cannot open structure file '" + file + "'");
    json j;
    in >> j;
    return LoopAlgebra::from_json(j);
}

std::vector<QPoly> diff_generators()
{
    return {parse_qpoly("t"), parse_qpoly("t^2")};
}

int cmd_oracle_virasoro(const CommonOpts& opts, Index n_max)
{
    auto [lo, hi] = parse_window(opts.window.empty() ? "-6..6" : opts.window);
    auto report = virasoro_check(lo, hi, n_max);
    std::vector<OracleLine> lines = {
        {"product0 (u o{0} u = du)", 1, report.product0 ? 0u : 1u},
        {"product1 (u o{1} u = 2u)", 1, report.product1 ? 0u : 1u},
        {"vanishing (u o{n} u = 0, 2 <= n <= " + std::to_string(n_max) + ")",
         static_cast<std::size_t>(n_max - 1), report.failed_zero.size()}};
    return report_oracle(opts, "virasoro", lines);
}

int cmd_oracle_identities(const CommonOpts& opts, const std::string& realization,
                          const std::string& structure_file)
{
    auto [lo, hi] = parse_window(opts.window.empty() ? "-8..8" : opts.window);
    std::vector<OracleLine> lines;

    if (realization == "diff-assoc") {
        DiffAssocAlgebra alg;
        auto gens = diff_generators();
        OracleLine diffass{"diffass", 0, 0};
        for (const auto& a : gens)
            for (const auto& b : gens)
                for (Index n = 0; n <= 3; ++n) {
                    ++diffass.cases;
                    if (!check_diffass(a, b, n, lo, hi)) ++diffass.failures;
                }
        OracleLine assconf{"assconf", 0, 0};
        for (const auto& a : gens)
            for (const auto& b : gens)
                for (Index n = 0; n <= 2; ++n)
                    for (Index m = 0; m <= 2; ++m) {
                        ++assconf.cases;
                        if (!check_assconf(alg, tilde_diff(a, lo, hi), n, tilde_diff(b, lo, hi), m,
                                           tilde_diff(a, lo, hi)))
                            ++assconf.failures;
                    }
        lines = {diffass, assconf};
    } else if (realization == "diff-lie") {
        DiffLieAlgebra alg;
        auto gens = diff_generators();
        OracleLine difflie{"difflie", 0, 0};
        for (const auto& a : gens)
            for (const auto& b : gens)
                for (Index n = 0; n <= 3; ++n) {
                    ++difflie.cases;
                    if (!check_difflie(a, b, n, lo, hi)) ++difflie.failures;
                }
        OracleLine jacconf{"jacconf", 0, 0};
        OracleLine quasisym{"quasisym", 0, 0};
        for (const auto& a : gens)
            for (const auto& b : gens) {
                auto x = tilde_diff(a, lo, hi);
                auto y = tilde_diff(b, lo, hi);
                for (Index n = 0; n <= 2; ++n) {
                    ++quasisym.cases;
                    if (!check_quasisym_series(alg, x, n, y)) ++quasisym.failures;
                    for (Index m = 0; m <= 2; ++m) {
                        ++jacconf.cases;
                        if (!check_jacconf(alg, x, n, y, m, x)) ++jacconf.failures;
                    }
                }
            }
        lines = {difflie, jacconf, quasisym};
    } else if (realization == "loop") {
        LoopAlgebra g = load_structure(structure_file);
        LoopLieAlgebra alg{&g};
        std::vector<LoopSeries> gens;
        for (int i = 0; i < g.dim(); ++i) gens.push_back(tilde_loop(g, g.basis_vec(i), lo, hi));
        OracleLine jacconf{"jacconf", 0, 0};
        OracleLine quasisym{"quasisym", 0, 0};
        for (const auto& x : gens)
            for (const auto& y : gens) {
                ++quasisym.cases;
                if (!check_quasisym_series(alg, x, 0, y)) ++quasisym.failures;
                for (const auto& z : gens) {
                    ++jacconf.cases;
                    if (!check_jacconf(alg, x, 0, y, 0, z)) ++jacconf.failures;
                }
            }
        OracleLine recon{"reconstruction", 0, 0};
        for (const auto& x : gens)
            for (const auto& y : gens)
                for (Index k = 0; k <= 2; ++k)
                    for (Index l = -2; l <= 2; ++l) {
                        ++recon.cases;
                        if (!check_reconstruction(alg, x, k, y, l)) ++recon.failures;
                    }
        lines = {jacconf, quasisym, recon};
    } else {
        throw ArgumentError("unknown realization '" + realization +
                            "' (diff-assoc, diff-lie, loop)");
    }
    return report_oracle(opts, "identities --realization " + realization, lines);
}

int cmd_oracle_locality(const CommonOpts& opts, const std::string& realization,
                        const std::string& structure_file, Index n_max)
{
    auto [lo, hi] = parse_window(opts.window.empty() ? "-8..8" : opts.window);
    json table = json::object();
    std::vector<OracleLine> lines;
    OracleLine measured{"locality measured", 0, 0};

    auto record = [&](const std::string& a, const std::string& b, std::optional<Index> order) {
        ++measured.cases;
        if (!order) ++measured.failures;
        table[a + "," + b] = order ? json(*order) : json("none <= " + std::to_string(n_max));
    };

    if (realization == "diff-lie" || realization == "diff-assoc") {
        auto gens = diff_generators();
        for (const auto& a : gens)
            for (const auto& b : gens) {
                auto x = tilde_diff(a, lo, hi);
                auto y = tilde_diff(b, lo, hi);
                std::optional<Index> order =
                    realization == "diff-lie"
                        ? locality_order(DiffLieAlgebra{}, x, y, n_max)
                        : locality_order(DiffAssocAlgebra{}, x, y, n_max);
                record(a.str(), b.str(), order);
            }
    } else if (realization == "loop") {
        LoopAlgebra g = load_structure(structure_file);
        LoopLieAlgebra alg{&g};
        for (int i = 0; i < g.dim(); ++i)
            for (int j = 0; j < g.dim(); ++j)
                record(g.basis_name(i), g.basis_name(j),
                       locality_order(alg, tilde_loop(g, g.basis_vec(i), lo, hi),
                                      tilde_loop(g, g.basis_vec(j), lo, hi), n_max));
    } else {
        throw ArgumentError("unknown realization '" + realization + "'");
    }

    lines.push_back(measured);
    if (opts.format != "json") {
        std::cout << "# command: oracle locality --realization " << realization << "\n";
        for (const auto& [key, value] : table.items())
            std::cout << "N(" << key << ") = " << value.dump() << "\n";
    }
    return report_oracle(opts, "locality --realization " + realization, lines,
                         json{{"orders", table}});
}

int cmd_oracle_dong(const CommonOpts& opts, const std::string& realization,
                    const std::string& structure_file)
{
    auto [lo, hi] = parse_window(opts.window.empty() ? "-10..10" : opts.window);
    OracleLine dong{"dong bound", 0, 0};

    if (realization == "diff-lie") {
        DiffLieAlgebra alg;
        auto gens = diff_generators();
        for (const auto& a : gens)
            for (const auto& b : gens)
                for (const auto& c : gens) {
                    auto x = tilde_diff(a, lo, hi);
                    auto y = tilde_diff(b, lo, hi);
                    auto z = tilde_diff(c, lo, hi);
                    auto nxy = locality_order(alg, x, y, 8);
                    if (!nxy) continue;
                    for (Index n = 0; n < *nxy; ++n) {
                        ++dong.cases;
                        if (!dong_bound_check(alg, x, y, z, n)) ++dong.failures;
                    }
                }
    } else if (realization == "loop") {
        LoopAlgebra g = load_structure(structure_file);
        LoopLieAlgebra alg{&g};
        for (int i = 0; i < g.dim(); ++i)
            for (int j = 0; j < g.dim(); ++j)
                for (int k = 0; k < g.dim(); ++k) {
                    auto x = tilde_loop(g, g.basis_vec(i), lo, hi);
                    auto y = tilde_loop(g, g.basis_vec(j), lo, hi);
                    auto z = tilde_loop(g, g.basis_vec(k), lo, hi);
                    auto nxy = locality_order(alg, x, y, 8);
                    if (!nxy) continue;
                    for (Index n = 0; n < *nxy; ++n) {
                        ++dong.cases;
                        if (!dong_bound_check(alg, x, y, z, n)) ++dong.failures;
                    }
                }
    } else {
        throw ArgumentError("oracle dong supports diff-lie and loop realizations");
    }
    return report_oracle(opts, "dong --realization " + realization, {dong});
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact computations in free conformal and vertex algebras"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* cmd, bool with_mode = true) {
        cmd->add_option("--letters", opts.letters, "comma-separated alphabet, declaration order");
        if (with_mode) cmd->add_option("--mode", opts.mode, "lie or assoc");
        cmd->add_option("--N", opts.constant_n, "constant locality");
        cmd->add_option("--locality", opts.locality_file, "JSON locality table file");
        cmd->add_option("--window", opts.window, "index window lo..hi");
        cmd->add_option("--format", opts.format, "text or json");
        cmd->add_option("--step-limit", opts.step_limit, "rewriting step budget");
    };

    // reduce
    std::string poly_text;
    bool trace = false;
    auto* reduce_cmd = app.add_subcommand("reduce", "normal form of a polynomial");
    add_common(reduce_cmd);
    reduce_cmd->add_option("polynomial", poly_text, "polynomial to reduce")->required();
    reduce_cmd->add_flag("--trace", trace, "record each rule application");

    // basis
    std::string space = "ul";
    int length = 1;
    std::optional<Index> sum;
    auto* basis_cmd = app.add_subcommand("basis", "enumerate basis words");
    add_common(basis_cmd);
    basis_cmd->add_option("--space", space, "ul, ulplus, vertex, a, aplus");
    basis_cmd->add_option("--length", length, "word length")->required();
    basis_cmd->add_option("--sum", sum, "index sum");

    // confluence
    auto* confluence_cmd = app.add_subcommand("confluence", "check all ambiguities in a window");
    add_common(confluence_cmd);

    // dim
    int dim_l = 1;
    std::string k_range;
    auto* dim_cmd = app.add_subcommand("dim", "dimensions of homogeneous components");
    add_common(dim_cmd);
    dim_cmd->add_option("--l", dim_l, "word length")->required();
    dim_cmd->add_option("--k", k_range, "index-sum range lo..hi")->required();

    // hall
    int max_length = 2;
    bool vertex = false;
    auto* hall_cmd = app.add_subcommand("hall", "Hall/Lyndon basis of the coefficient algebra");
    add_common(hall_cmd, /*with_mode=*/false);
    hall_cmd->add_option("--max-length", max_length, "maximal foliage length");
    hall_cmd->add_flag("--vertex", vertex, "project the basis into the vertex algebra");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "independent series verification");
    oracle_cmd->require_subcommand(1);
    Index n_max = 6;
    std::string realization = "diff-lie";
    std::string structure_file;

    auto* vir_cmd = oracle_cmd->add_subcommand("virasoro", "centerless Virasoro relations");
    vir_cmd->add_option("--window", opts.window, "index window lo..hi");
    vir_cmd->add_option("--n-max", n_max, "highest vanishing product to check");
    vir_cmd->add_option("--format", opts.format, "text or json");

    auto* id_cmd = oracle_cmd->add_subcommand("identities", "conformal identity sweeps");
    id_cmd->add_option("--window", opts.window, "index window lo..hi");
    id_cmd->add_option("--realization", realization, "diff-assoc, diff-lie or loop");
    id_cmd->add_option("--structure", structure_file, "structure-constant JSON file");
    id_cmd->add_option("--format", opts.format, "text or json");

    auto* loc_cmd = oracle_cmd->add_subcommand("locality", "measured locality orders");
    loc_cmd->add_option("--window", opts.window, "index window lo..hi");
    loc_cmd->add_option("--realization", realization, "diff-assoc, diff-lie or loop");
    loc_cmd->add_option("--structure", structure_file, "structure-constant JSON file");
    loc_cmd->add_option("--n-max", n_max, "largest order to try");
    loc_cmd->add_option("--format", opts.format, "text or json");

    auto* dong_cmd = oracle_cmd->add_subcommand("dong", "locality bounds for composites");
    dong_cmd->add_option("--window", opts.window, "index window lo..hi");
    dong_cmd->add_option("--realization", realization, "diff-lie or loop");
    dong_cmd->add_option("--structure", structure_file, "structure-constant JSON file");
    dong_cmd->add_option("--format", opts.format, "text or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (reduce_cmd->parsed()) return cmd_reduce(opts, poly_text, trace);
        if (basis_cmd->parsed()) return cmd_basis(opts, space, length, sum);
        if (confluence_cmd->parsed()) return cmd_confluence(opts);
        if (dim_cmd->parsed()) return cmd_dim(opts, dim_l, k_range);
        if (hall_cmd->parsed()) return cmd_hall(opts, max_length, vertex);
        if (oracle_cmd->parsed()) {
            if (vir_cmd->parsed()) return cmd_oracle_virasoro(opts, n_max);
            if (id_cmd->parsed()) return cmd_oracle_identities(opts, realization, structure_file);
            if (loc_cmd->parsed()) return cmd_oracle_locality(opts, realization, structure_file, n_max);
            if (dong_cmd->parsed()) return cmd_oracle_dong(opts, realization, structure_file);
        }
        throw ArgumentError("no command given");
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const WindowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
