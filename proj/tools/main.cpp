// projcalc — projection calculus toolkit for pairs of projections in
// finite-dimensional C*-algebras: fixtures, constructions, liftings,
// excision, transitivity, and the full verification suite.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <projcalc/io.hpp>
#include <projcalc/verify.hpp>

namespace {

using namespace projcalc;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

Mat read_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }

ScalarFunction read_function(const std::string& spec) {
    if (spec == "id" || spec == "chi" || spec.rfind("cap:", 0) == 0 ||
        spec.rfind("const:", 0) == 0)
        return ScalarFunction::parse(spec);
    return scalar_function_from_json(read_json_file(spec));
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

std::vector<double> parse_angle_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

json report_to_json(const VerificationReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"id", c.id},
                              {"residual", c.residual},
                              {"bound", c.bound},
                              {"pass", c.pass},
                              {"trials", c.trials}});
    return json{{"suite", rep.suite},
                {"seed", rep.seed},
                {"trials", rep.trials},
                {"dim_max", rep.dim_max},
                {"checks", checks},
                {"summary", json{{"passed", rep.passed}, {"failed", rep.failed}}},
                {"wall_time", rep.wall_time}};
}

json residual_entry(const std::string& name, double value, double bound) {
    return json{{"name", name}, {"value", value}, {"bound", bound}};
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, int dim_max,
               double tol_eq, double tau_spec, const std::string& out_path) {
    VerifyContext cx_;
    cx_.seed = seed;
    cx_.trials = trials;
    cx_.dim_max = dim_max;
    cx_.tol.tau_eq = tol_eq;
    cx_.tol.tau_spec = tau_spec;
    cx_.tol.validate();

    bool known = suite == "all";
    for (const auto& s : suite_names()) known = known || s == suite;
    if (!known) {
        std::cerr << "unknown suite '" << suite << "'\n";
        return 2;
    }
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep = run_verification(suite, cx_);
    rep.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(report_to_json(rep), out_path);
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"projection calculus toolkit"};
    app.require_subcommand(1);

    // verify
    std::string v_suite = "all", v_out;
    std::uint64_t v_seed = 42;
    int v_trials = 200, v_dim = 8;
    double v_tol = 1e-8, v_tau_spec = 1e-4;
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", v_suite,
                       "support|geometry|calculus|homotopy|lifting|states|all");
    verify->add_option("--seed", v_seed, "rng seed");
    verify->add_option("--trials", v_trials, "trial cap per check");
    verify->add_option("--dim-max", v_dim, "largest fixture dimension");
    verify->add_option("--tol", v_tol, "residual tolerance tau_eq");
    verify->add_option("--tau-spec", v_tau_spec, "Hausdorff tolerance for spectrum lifts");
    verify->add_option("--out", v_out, "write the JSON report to a file");

    // pair
    std::string p_angles, p_out;
    int p_ep = 0, p_eq = 0, p_ek = 0;
    std::uint64_t p_seed = 1;
    auto* pair = app.add_subcommand("pair", "generate a projection pair with given angles");
    pair->add_option("--angles", p_angles, "comma-separated principal angles in (0, pi/2)");
    pair->add_option("--extra-p", p_ep, "dimensions with P=1, Q=0");
    pair->add_option("--extra-q", p_eq, "dimensions with P=0, Q=1");
    pair->add_option("--extra-kernel", p_ek, "dimensions with P=Q=0");
    pair->add_option("--seed", p_seed, "rng seed");
    pair->add_option("--out", p_out, "output file");

    // pc
    std::string c_q, c_r, c_fn = "id", c_g, c_out;
    auto* pc = app.add_subcommand("pc", "projection calculus P_{Q,R,f}");
    pc->add_option("--q", c_q, "projection Q (matrix JSON)")->required();
    pc->add_option("--r", c_r, "projection R (matrix JSON)")->required();
    pc->add_option("--fn", c_fn, "f: id|chi|cap:c|const:t or a JSON file");
    pc->add_option("--g", c_g, "second function for the distance formulas");
    pc->add_option("--out", c_out, "output file");

    // homotopy
    std::string h_kind = "close", h_q, h_r, h_u, h_out;
    int h_steps = 9;
    auto* hom = app.add_subcommand("homotopy", "sampled projection homotopies");
    hom->add_option("--kind", h_kind, "close|orth|mvn");
    hom->add_option("--q", h_q, "projection Q (close)");
    hom->add_option("--r", h_r, "projection R (close)");
    hom->add_option("--u", h_u, "partial isometry U (orth, mvn)");
    hom->add_option("--steps", h_steps, "number of samples");
    hom->add_option("--out", h_out, "output file");

    // lift
    std::string l_kind, l_alg, l_map, l_r, l_q, l_input, l_out;
    bool l_exact = false;
    double l_tau_spec = 1e-4;
    auto* lift = app.add_subcommand("lift", "lift along a block-dropping quotient");
    lift->add_option("--kind", l_kind, "norm|spectrum|idempotent|isometry")->required();
    lift->add_option("--algebra", l_alg, "source algebra JSON")->required();
    lift->add_option("--map", l_map, "quotient map JSON")->required();
    lift->add_option("--r", l_r, "source projection R (norm, spectrum)");
    lift->add_option("--q", l_q, "source projection Q (norm, spectrum)");
    lift->add_option("--input", l_input, "target element (idempotent, isometry)");
    lift->add_flag("--spectrum-exact", l_exact, "spectrum-exact isometry lift");
    lift->add_option("--tau-spec", l_tau_spec, "Hausdorff tolerance");
    lift->add_option("--out", l_out, "output file");

    // excise
    std::string e_q, e_state, e_out;
    int e_rank = 1;
    auto* exc = app.add_subcommand("excise", "excise a vector state on a projection");
    exc->add_option("--q", e_q, "projection Q (matrix JSON)")->required();
    exc->add_option("--state", e_state, "pure state JSON")->required();
    exc->add_option("--rank", e_rank, "target rank");
    exc->add_option("--out", e_out, "output file");

    // transitivity
    int t_n = 2, t_N = 4;
    bool t_fat = false;
    std::uint64_t t_seed = 7;
    std::string t_out;
    auto* tr = app.add_subcommand("transitivity", "matrix unit system over a random basis");
    tr->add_option("--n", t_n, "number of basis vectors");
    tr->add_option("--N", t_N, "ambient dimension");
    tr->add_flag("--fat", t_fat, "higher-rank excision path");
    tr->add_option("--seed", t_seed, "rng seed for the basis");
    tr->add_option("--out", t_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify)
            return cmd_verify(v_suite, v_seed, v_trials, v_dim, v_tol, v_tau_spec, v_out);

        if (*pair) {
            auto angles = parse_angle_list(p_angles);
            auto [p, q] = pair_from_angles(angles, p_ep, p_eq, p_ek, p_seed);
            json out{{"p", matrix_to_json(p)},
                     {"q", matrix_to_json(q)},
                     {"spectrum", spectrum_of_pair(p, q)}};
            emit(out, p_out);
            return 0;
        }

        if (*pc) {
            Mat q = read_matrix(c_q), r = read_matrix(c_r);
            ScalarFunction f = read_function(c_fn);
            auto res = pc_build(q, r, f);
            const Tolerances& tol = tolerances();
            json residuals = json::array();
            residuals.push_back(residual_entry(
                "initial_projection", operator_norm(res.U.adjoint() * res.U - r),
                10.0 * tol.tau_eq));
            residuals.push_back(residual_entry(
                "corner_identity",
                operator_norm(q * res.P * q - apply_function(hermitize(q * r * q), f)),
                10.0 * tol.tau_eq));
            residuals.push_back(residual_entry(
                "projection", operator_norm(res.P * res.P - res.P), 10.0 * tol.tau_eq));
            json out{{"P", matrix_to_json(res.P)},
                     {"U", matrix_to_json(res.U)},
                     {"used_spectrum", res.used_spectrum},
                     {"residuals", residuals}};
            if (!c_g.empty()) {
                ScalarFunction g = read_function(c_g);
                auto resg = pc_build(q, r, g);
                out["unitary_distance"] = pc_unitary_distance(q, r, f, g);
                out["projection_distance"] = pc_projection_distance(q, r, f, g);
                out["unitary_distance_direct"] = operator_norm(res.U - resg.U);
                out["projection_distance_direct"] = operator_norm(res.P - resg.P);
            }
            emit(out, c_out);
            return 0;
        }

        if (*hom) {
            HomotopyPath path;
            if (h_kind == "close") {
                if (h_q.empty() || h_r.empty())
                    throw DomainError("homotopy close needs --q and --r");
                path = homotopy_close(read_matrix(h_q), read_matrix(h_r), h_steps);
            } else if (h_kind == "orth") {
                if (h_u.empty()) throw DomainError("homotopy orth needs --u");
                path = homotopy_orthogonal_mvn(read_matrix(h_u), h_steps);
            } else if (h_kind == "mvn") {
                if (h_u.empty()) throw DomainError("homotopy mvn needs --u");
                path = homotopy_mvn(read_matrix(h_u), h_steps);
            } else {
                std::cerr << "unknown homotopy kind '" << h_kind << "'\n";
                return 2;
            }
            json out = homotopy_path_to_json(path);
            double proj_resid = 0.0;
            for (const auto& s : path.steps)
                proj_resid = std::max(proj_resid, operator_norm(s * s - s));
            out["residuals"] = json::array(
                {residual_entry("endpoint_start",
                                operator_norm(path.steps.front() - path.start), 1e-7),
                 residual_entry("endpoint_end", operator_norm(path.steps.back() - path.end),
                                1e-7),
                 residual_entry("projection_along_path", proj_resid, 1e-7)});
            out["max_adjacent_distance"] = path.max_adjacent_distance();
            emit(out, h_out);
            return 0;
        }

        if (*lift) {
            BlockAlgebra alg = block_algebra_from_json(read_json_file(l_alg));
            QuotientMap pi = quotient_map_from_json(read_json_file(l_map), alg);
            Tolerances tol;
            tol.tau_spec = l_tau_spec;
            json out;
            if (l_kind == "norm" || l_kind == "spectrum") {
                if (l_r.empty() || l_q.empty())
                    throw DomainError("lift norm/spectrum needs --r and --q (source elements)");
                BlockElement r(alg, read_matrix(l_r), tol);
                BlockElement q(alg, read_matrix(l_q), tol);
                if (l_kind == "norm") {
                    auto p = lift_projection_norm(pi, r, q, tol);
                    double npq = operator_norm(p.matrix * q.matrix);
                    double tpq =
                        operator_norm(pi.apply_matrix(p.matrix) * pi.apply_matrix(q.matrix));
                    out = json{{"P", matrix_to_json(p.matrix)},
                               {"norm_pq", npq},
                               {"norm_pq_squared", npq * npq},
                               {"residuals",
                                json::array({residual_entry("norm_match", std::abs(npq - tpq),
                                                            10.0 * tol.tau_eq)})}};
                } else {
                    auto res = lift_projection_spectrum(pi, r, q, 200, tol);
                    out = json{{"P", matrix_to_json(res.P.matrix)},
                               {"hausdorff", res.hausdorff},
                               {"iterations", res.iterations},
                               {"stalled", res.stalled},
                               {"spectrum", spectrum_of_pair(res.P.matrix, q.matrix, tol)}};
                }
            } else if (l_kind == "idempotent") {
                if (l_input.empty()) throw DomainError("lift idempotent needs --input");
                BlockElement i(pi.target, read_matrix(l_input), tol);
                auto res = lift_idempotent(pi, i, 200, tol);
                out = json{{"I", matrix_to_json(res.I.matrix)},
                           {"hausdorff", res.hausdorff},
                           {"stalled", res.stalled}};
            } else if (l_kind == "isometry") {
                if (l_input.empty()) throw DomainError("lift isometry needs --input");
                BlockElement u(pi.target, read_matrix(l_input), tol);
                if (l_exact) {
                    auto res = lift_partial_isometry_spectrum(pi, u, 200, tol);
                    out = json{{"U", matrix_to_json(res.U.matrix)},
                               {"hausdorff", res.hausdorff},
                               {"stalled", res.stalled}};
                } else {
                    auto res = lift_partial_isometry(pi, u, {}, tol);
                    double n2 = operator_norm(res.matrix * res.matrix);
                    double t2 = operator_norm(u.matrix * u.matrix);
                    out = json{{"U", matrix_to_json(res.matrix)},
                               {"norm_u2", n2},
                               {"residuals",
                                json::array({residual_entry("square_norm_match",
                                                            std::abs(n2 - t2),
                                                            10.0 * tol.tau_eq)})}};
                }
            } else {
                std::cerr << "unknown lift kind '" << l_kind << "'\n";
                return 2;
            }
            emit(out, l_out);
            return 0;
        }

        if (*exc) {
            Mat q = read_matrix(e_q);
            PureState phi = pure_state_from_json(read_json_file(e_state));
            Mat p = excise(q, phi, e_rank);
            double lam = phi.evaluate_real(q);
            Tolerances tol;
            json out{{"P", matrix_to_json(p)},
                     {"phi_q", lam},
                     {"rank", numeric_rank(p)},
                     {"residuals",
                      json::array(
                          {residual_entry("excision", operator_norm(p * q * p - lam * p),
                                          100.0 * tol.tau_eq),
                           residual_entry("state_fixed", (p * phi.vector - phi.vector).norm(),
                                          10.0 * tol.tau_eq)})}};
            emit(out, e_out);
            return 0;
        }

        if (*tr) {
            if (t_n > t_N) throw DimensionTooSmall("transitivity: need N >= n");
            Rng rng(mix_seed(t_seed, "transitivity-cli"));
            Mat w = haar_unitary(t_N, rng);
            std::vector<Vec> basis;
            for (int i = 0; i < t_n; ++i) basis.push_back(w.col(i));
            auto sys = transitivity_units(t_N, basis, t_fat);
            json units = json::array();
            for (const auto& u : sys.units) units.push_back(matrix_to_json(u));
            double law_resid = 0.0;
            for (int i = 0; i < t_n; ++i)
                for (int j = 0; j < t_n; ++j)
                    for (int k = 0; k < t_n; ++k)
                        for (int l = 0; l < t_n; ++l) {
                            Mat lhs = sys.unit_product(i, j) * sys.unit_product(k, l);
                            Mat want =
                                j == k ? sys.unit_product(i, l) : Mat(Mat::Zero(t_N, t_N));
                            law_resid = std::max(law_resid, operator_norm(lhs - want));
                        }
            json out{{"units", units},
                     {"residuals",
                      json::array({residual_entry("matrix_unit_laws", law_resid, 1e-7)})}};
            emit(out, t_out);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
