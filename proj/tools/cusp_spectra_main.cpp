// Command line front end: eigenvalue counting for hyperbolic surfaces with
// magnetic cusp ends.
//
//   cusp-spectra count       --surface s.json --lambda 100
//   cusp-spectra eigenvalues --surface s.json --lambda 30 --cusp 0
//   cusp-spectra weyl        --surface s.json --lambda-max 1e4 --grid 32
//   cusp-spectra verify      --seed 7 --out report.json
//
// Exit codes: 0 success, 1 runtime failure (non-discrete spectrum, window
// guard, failed verification), 2 usage or malformed input.  All output is
// deterministic for fixed inputs: doubles print with 17 significant digits.

#include <cstdio>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cusp_spectra/counting.hpp"
#include "cusp_spectra/io.hpp"
#include "cusp_spectra/verify.hpp"
#include "cusp_spectra/weyl.hpp"

namespace {

using namespace cusp_spectra;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) std::fputs(text.c_str(), stdout);
    else write_text_file(out_path, text);
}

std::string bc_name(Bc bc) { return bc == Bc::dirichlet ? "dirichlet" : "neumann"; }

int run_count(const std::string& surface_path, double lambda,
              const std::string& format, const std::string& out_path) {
    const Surface s = load_surface(surface_path);
    const SurfaceBracket br = surface_bracket_stable(s, lambda);
    std::string text;
    if (format == "json") {
        json j;
        j["lambda"] = lambda;
        j["evaluated_lambda"] = br.lambda;
        j["count_lower"] = br.lower;
        j["count_upper"] = br.upper;
        j["core_lower"] = br.core_lower;
        j["core_upper"] = br.core_upper;
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "lambda,evaluated_lambda,count_lower,count_upper,core_lower,core_upper\n"
           << format_g17(lambda) << ',' << format_g17(br.lambda) << ',' << br.lower
           << ',' << br.upper << ',' << br.core_lower << ',' << br.core_upper << '\n';
        text = os.str();
    }
    emit(text, out_path);
    return 0;
}

int run_eigenvalues(const std::string& surface_path, double lambda,
                    std::size_t cusp_index, Bc bc, const std::string& format,
                    const std::string& out_path) {
    const Surface s = load_surface(surface_path);
    if (cusp_index >= s.cusps.size())
        throw std::invalid_argument("cusp index " + std::to_string(cusp_index) +
                                    " out of range, surface has " +
                                    std::to_string(s.cusps.size()) + " cusps");
    const Cusp& c = s.cusps[cusp_index];
    cusp_count(c, lambda, bc); // trips the window guard before a partial listing
    const ModeWindow w = mode_window(c, lambda);
    std::string text;
    if (format == "json") {
        json j;
        j["cusp"] = cusp_index;
        j["bc"] = bc_name(bc);
        j["lambda"] = lambda;
        j["modes"] = json::array();
        for (long ell = w.lmin; ell <= w.lmax; ++ell) {
            json jm;
            jm["ell"] = ell;
            jm["eigenvalues"] = json::array();
            for (double e : eigenvalues_below(p_mode(c, static_cast<int>(ell), bc), lambda))
                jm["eigenvalues"].push_back(e);
            j["modes"].push_back(jm);
        }
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "cusp,bc,ell,index,eigenvalue\n";
        for (long ell = w.lmin; ell <= w.lmax; ++ell) {
            const auto evs = eigenvalues_below(p_mode(c, static_cast<int>(ell), bc), lambda);
            for (std::size_t i = 0; i < evs.size(); ++i)
                os << cusp_index << ',' << bc_name(bc) << ',' << ell << ',' << i
                   << ',' << format_g17(evs[i]) << '\n';
        }
        text = os.str();
    }
    emit(text, out_path);
    return 0;
}

int run_weyl(const std::string& surface_path, double lambda_max, int grid,
             const std::string& format, const std::string& out_path) {
    const Surface s = load_surface(surface_path);
    const WeylReport rep = weyl_report(s, make_lambda_grid(lambda_max, grid));
    const std::string text = format == "json" ? weyl_report_to_json(rep).dump(2) + "\n"
                                              : weyl_report_csv(rep);
    emit(text, out_path);
    return 0;
}

int run_verify(unsigned long long seed, const std::string& out_path) {
    verify::Options opt;
    opt.seed = seed;
    const verify::Report rep = verify::run_suite(opt);
    for (const auto& c : rep.checks)
        std::printf("[%s] %-34s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
    long failures = 0;
    for (const auto& c : rep.checks)
        if (!c.pass) ++failures;
    if (failures == 0)
        std::printf("all %zu checks passed\n", rep.checks.size());
    else
        std::printf("%ld of %zu checks FAILED\n", failures, rep.checks.size());
    if (!out_path.empty())
        write_text_file(out_path, verify::report_to_json(rep).dump(2) + "\n");
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigenvalue counting for hyperbolic surfaces with magnetic cusp ends"};
    app.require_subcommand(1);

    std::string surface_path, out_path, format = "csv";
    double lambda = 0.0, lambda_max = 0.0;
    int grid = 32;
    std::size_t cusp_index = 0;
    unsigned long long seed = 7;
    Bc bc = Bc::dirichlet;
    const std::map<std::string, Bc> bc_names{{"dirichlet", Bc::dirichlet},
                                             {"neumann", Bc::neumann}};

    auto* count = app.add_subcommand("count", "bracket the counting function at lambda");
    count->add_option("--surface", surface_path, "surface config JSON")->required();
    count->add_option("--lambda", lambda, "spectral threshold")->required();
    count->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    count->add_option("--out", out_path, "write output here instead of stdout");

    auto* eig = app.add_subcommand("eigenvalues",
                                   "per-mode eigenvalues below lambda for one cusp");
    eig->add_option("--surface", surface_path, "surface config JSON")->required();
    eig->add_option("--lambda", lambda, "spectral threshold")->required();
    eig->add_option("--cusp", cusp_index, "cusp index, 0-based");
    eig->add_option("--bc", bc, "boundary condition at the cusp base")
        ->transform(CLI::CheckedTransformer(bc_names, CLI::ignore_case));
    eig->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    eig->add_option("--out", out_path, "write output here instead of stdout");

    auto* weyl = app.add_subcommand("weyl", "counting function along a geometric grid");
    weyl->add_option("--surface", surface_path, "surface config JSON")->required();
    weyl->add_option("--lambda-max", lambda_max, "top of the grid")->required();
    weyl->add_option("--grid", grid, "number of grid points");
    weyl->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    weyl->add_option("--out", out_path, "write output here instead of stdout");

    auto* ver = app.add_subcommand("verify", "run the invariant battery");
    ver->add_option("--seed", seed, "seed for the randomized checks");
    ver->add_option("--out", out_path, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (count->parsed()) return run_count(surface_path, lambda, format, out_path);
        if (eig->parsed())
            return run_eigenvalues(surface_path, lambda, cusp_index, bc, format, out_path);
        if (weyl->parsed()) return run_weyl(surface_path, lambda_max, grid, format, out_path);
        return run_verify(seed, out_path);
    } catch (const std::invalid_argument& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
}
