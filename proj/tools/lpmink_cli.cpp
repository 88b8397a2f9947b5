// Command-line front end for the L_p Minkowski toolkit.
//
// Commands:
//   solve           iterate the fixed-point solver on a problem JSON
//   verify-example  sweep a closed-form construction and report bounds
//   diagnose        boundary-regularity report for a body JSON
//   transfer        tabulate a transferred spherical density on a grid
//   selftest        run the randomized invariant suite
//
// Exit codes: 0 success, 2 non-convergence (partial result written),
// 64 input/schema error, 70 internal invariant failure.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "lpmink/closed_forms.hpp"
#include "lpmink/diagnostics.hpp"
#include "lpmink/json_io.hpp"
#include "lpmink/pl_convex.hpp"
#include "lpmink/selftest.hpp"
#include "lpmink/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNonConverged = 2;
constexpr int kExitInput = 64;
constexpr int kExitInternal = 70;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int cmd_solve(const std::string& input, const std::string& output, double tol, int max_iter,
              double damping) {
    lpmink::LpProblem prob = lpmink::problem_from_json(lpmink::load_json_file(input));
    lpmink::SolveOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.damping = damping;
    lpmink::SolveResult res = lpmink::solve(prob, opts);

    std::string body = lpmink::to_json(res, prob).dump(2) + "\n";
    if (!output.empty()) {
        lpmink::write_file_atomic(output, body);
        std::ostringstream csv;
        csv << "iteration,max_residual\n";
        for (size_t i = 0; i < res.residual_history.size(); ++i)
            csv << i + 1 << "," << fmt(res.residual_history[i]) << "\n";
        std::string stem = output;
        if (auto pos = stem.rfind('.'); pos != std::string::npos) stem.resize(pos);
        lpmink::write_file_atomic(stem + "_residuals.csv", csv.str());
    } else {
        std::cout << body;
    }
    std::cerr << (res.converged ? "converged" : "NOT converged") << " after " << res.iterations
              << " iterations, max residual " << fmt(res.max_residual) << "\n";
    return res.converged ? kExitOk : kExitNonConverged;
}

int cmd_verify_ex32(int n, double p, double beta, int grid, const std::string& output) {
    lpmink::Ex32Params prm{n, p, beta};
    prm.validate();
    lpmink::Ex32Verify rep = lpmink::ex32_verify(prm, grid, grid);
    std::cout << "alpha            " << fmt(prm.alpha()) << "\n"
              << "beta_threshold   " << fmt(prm.beta_threshold()) << "\n"
              << "residual_inf c1  " << fmt(rep.residual_inf) << "\n"
              << "residual_sup c2  " << fmt(rep.residual_sup) << "\n"
              << "sup/inf          " << fmt(rep.residual_sup / rep.residual_inf) << "\n"
              << "convex           " << (rep.convex ? "yes" : "no") << "\n"
              << "order_defect     " << fmt(rep.order_defect) << "\n";
    if (!output.empty()) {
        std::ostringstream csv;
        csv << "x1,r,value,det,residual\n";
        for (int i = 0; i < grid; ++i) {
            double x1 = -1.0 + 2.0 * i / (grid - 1);
            for (int j = 0; j < grid; ++j) {
                double r = 1e-4 + (1.0 - 1e-4) * j / (grid - 1);
                lpmink::Ex32Eval e = lpmink::ex32_eval(prm, x1, r);
                csv << fmt(x1) << "," << fmt(r) << "," << fmt(e.value) << "," << fmt(e.det)
                    << "," << fmt(e.residual) << "\n";
            }
        }
        lpmink::write_file_atomic(output, csv.str());
    }
    if (!(rep.residual_inf > 0.0) || !rep.convex) return kExitInternal;
    return kExitOk;
}

int cmd_verify_ex42(int n, double p, int grid, const std::string& output) {
    lpmink::Ex42Params prm{n, p};
    prm.validate();
    double limit = lpmink::ex42_residual_limit(prm);
    std::cout << "q                " << fmt(prm.q()) << "\n"
              << "profile_exponent " << fmt(prm.profile_exponent()) << "\n"
              << "residual_limit   " << fmt(limit) << "\n";
    if (!output.empty()) {
        std::ostringstream csv;
        csv << "z,value,det,residual\n";
        for (int i = 0; i < grid; ++i) {
            // logarithmic sweep from 1e-6 up to 1
            double z = std::pow(10.0, -6.0 + 6.0 * i / (grid - 1));
            lpmink::Ex42Eval e = lpmink::ex42_eval(prm, z);
            csv << fmt(z) << "," << fmt(e.value) << "," << fmt(e.det) << "," << fmt(e.residual)
                << "\n";
        }
        lpmink::write_file_atomic(output, csv.str());
    }
    return limit > 0.0 ? kExitOk : kExitInternal;
}

int cmd_diagnose(const std::string& input, double p, const std::string& problem_path,
                 const std::string& output) {
    lpmink::Polytope P = lpmink::polytope_from_json(lpmink::load_json_file(input));
    std::optional<lpmink::LpProblem> prob;
    if (!problem_path.empty())
        prob = lpmink::problem_from_json(lpmink::load_json_file(problem_path));
    lpmink::RegularityReport rep = lpmink::diagnose(P, p, prob ? &*prob : nullptr);

    std::cout << "origin_on_boundary     " << (rep.origin_on_boundary ? "yes" : "no") << "\n"
              << "normal_cone_dim        " << rep.normal_cone_dim << "\n"
              << "zero_set_negligible    " << (rep.zero_set_negligible ? "true" : "false") << "\n"
              << "origin_cone_mass       " << fmt(rep.origin_cone_mass) << "\n"
              << "origin_cone_mass_zero  " << (rep.origin_cone_mass_zero ? "true" : "false")
              << "\n"
              << "touching_set_mass      " << fmt(rep.x0_mass) << "\n"
              << "touching_set_facets    " << rep.x0_facets.size() << "\n"
              << "touching_set_vertices  " << rep.x0_vertices.size() << "\n";
    for (const auto& [name, v] : rep.verdicts)
        std::cout << "verdict " << name << ": " << lpmink::to_string(v) << "\n";
    if (!output.empty())
        lpmink::write_file_atomic(output, lpmink::to_json(rep, P.dim()).dump(2) + "\n");
    return kExitOk;
}

int cmd_transfer(int n, double p, double f_value, int grid, const std::string& output) {
    if (n != 2 && n != 3) throw lpmink::SchemaError("transfer: --n must be 2 or 3");
    auto f = [f_value](const lpmink::Vec3&) { return f_value; };
    lpmink::Vec3 e = n == 3 ? lpmink::Vec3{0, 0, 1} : lpmink::Vec3{0, 1, 0};
    std::ostringstream csv;
    if (n == 3) {
        csv << "y1,y2,g\n";
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                lpmink::Vec3 y{-1.0 + 2.0 * i / (grid - 1), -1.0 + 2.0 * j / (grid - 1), 0.0};
                csv << fmt(y[0]) << "," << fmt(y[1]) << ","
                    << fmt(lpmink::transfer_density(f, n, p, e, y)) << "\n";
            }
    } else {
        csv << "y1,g\n";
        for (int i = 0; i < grid; ++i) {
            lpmink::Vec3 y{-1.0 + 2.0 * i / (grid - 1), 0.0, 0.0};
            csv << fmt(y[0]) << "," << fmt(lpmink::transfer_density(f, n, p, e, y)) << "\n";
        }
    }
    if (!output.empty())
        lpmink::write_file_atomic(output, csv.str());
    else
        std::cout << csv.str();
    return kExitOk;
}

int cmd_selftest(std::uint64_t seed) {
    bool ok = true;
    for (int k = 0; k < 5; ++k) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        auto failures = lpmink::run_selftest(s);
        std::printf("seed %" PRIu64 ": %s\n", s, failures.empty() ? "pass" : "FAIL");
        for (const auto& m : failures) {
            std::printf("  %s\n", m.c_str());
            ok = false;
        }
    }
    return ok ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete L_p Minkowski problem toolkit"};
    app.require_subcommand(1);

    std::string input, output, problem_path, example;
    double tol = 1e-8, damping = 1.0, p = 0.0, beta = 0.05, f_value = 1.0;
    int max_iter = 500, n = 3, grid = 200;
    std::uint64_t seed = 1;

    auto* solve = app.add_subcommand("solve", "solve a problem JSON");
    solve->add_option("--input", input)->required();
    solve->add_option("--output", output);
    solve->add_option("--tol", tol)->check(CLI::PositiveNumber);
    solve->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);
    solve->add_option("--damping", damping)->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify-example", "sweep a closed-form construction");
    verify->add_option("example", example)->required()->check(CLI::IsMember({"ex32", "ex42"}));
    verify->add_option("--n", n);
    verify->add_option("--p", p);
    verify->add_option("--beta", beta);
    verify->add_option("--grid", grid)->check(CLI::PositiveNumber);
    verify->add_option("--output", output);

    auto* diagnose = app.add_subcommand("diagnose", "boundary-regularity report");
    diagnose->add_option("--input", input)->required();
    diagnose->add_option("--p", p);
    diagnose->add_option("--problem", problem_path);
    diagnose->add_option("--output", output);

    auto* transfer = app.add_subcommand("transfer", "tabulate a transferred density");
    transfer->add_option("--n", n);
    transfer->add_option("--p", p);
    transfer->add_option("--f", f_value, "constant spherical density value");
    transfer->add_option("--grid", grid)->check(CLI::PositiveNumber);
    transfer->add_option("--output", output);

    auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
    selftest->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(solve)) return cmd_solve(input, output, tol, max_iter, damping);
        if (app.got_subcommand(verify)) {
            if (example == "ex32") return cmd_verify_ex32(n, p, beta, grid, output);
            return cmd_verify_ex42(n, p, grid, output);
        }
        if (app.got_subcommand(diagnose)) return cmd_diagnose(input, p, problem_path, output);
        if (app.got_subcommand(transfer)) return cmd_transfer(n, p, f_value, grid, output);
        if (app.got_subcommand(selftest)) return cmd_selftest(seed);
    } catch (const lpmink::SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInput;
}
