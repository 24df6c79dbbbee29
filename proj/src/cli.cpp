#include "exfb/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "exfb/errors.hpp"
#include "exfb/identities.hpp"
#include "exfb/io.hpp"
#include "exfb/overdet.hpp"
#include "exfb/spectrum.hpp"

namespace exfb {

namespace {

const std::vector<std::string> commands = {"solve", "identities", "spectrum", "bifurcations",
                                           "branch", "sweep", "normalize"};

struct Checks {
    std::vector<std::pair<std::string, bool>> items;
    void add(std::string name, bool ok) { items.emplace_back(std::move(name), ok); }
    int failed() const {
        int n = 0;
        for (const auto& [name, ok] : items) n += !ok;
        return n;
    }
    json summary() const {
        json failures = json::array();
        for (const auto& [name, ok] : items)
            if (!ok) failures.push_back(name);
        const int f = failed();
        return {{"checks", static_cast<int>(items.size())},
                {"passed", static_cast<int>(items.size()) - f},
                {"failed", f},
                {"failures", failures}};
    }
};

json sign_conventions() {
    return {{"normal", "nu is the unit normal pointing out of Omega, into the exterior region"},
            {"normalized_mean_curvature", "Hn = -(1/(N-1)) sum of principal curvatures, Hn(dB_R) = -1/R"},
            {"mean_curvature", "H = -(N-1) Hn, H(dB_R) = (N-1)/R"},
            {"neumann_trace", "d_nu u = grad u . nu; on dB_1 it equals -(N-2), and -1 in the plane"},
            {"overdetermined_condition", "d_nu u = Gamma Hn + Gamma - (N-2); the plane uses Gamma - 1"}};
}

json defaults(const RunConfig& c) {
    const SolveOptions& s = c.solve;
    return {{"tolerances",
             {{"pohozaev_rel", tol_pohozaev},
              {"energy_rel", tol_energy},
              {"minkowski_rel", tol_minkowski},
              {"planar_flux_abs", tol_flux},
              {"defect_identity_rel", tol_defect},
              {"inequality_slack", tol_inequality},
              {"fit_accept", fit_accept},
              {"fit_reject", fit_reject},
              {"layer_target", LayerOptions{}.target},
              {"spectrum_planar_gap", 1e-5},
              {"spectrum_translation", 1e-8},
              {"spectrum_root", 1e-6},
              {"ball_distance", 1e-6},
              {"max_nonconvergence", 0.2}}},
            {"solve_options",
             {{"max_iterations", s.max_iterations},
              {"residual_tolerance", s.residual_tolerance},
              {"step_damping", s.step_damping},
              {"volume_weight", s.volume_weight},
              {"truncation", s.truncation},
              {"collocation_count", s.collocation_count},
              {"fd_step", s.fd_step},
              {"seed", c.seed}}},
            {"fd_step_spectrum", c.fd_step}};
}

json header(const RunConfig& c) {
    return {{"command", c.command}, {"dimension", c.dimension}, {"defaults", defaults(c)},
            {"sign_conventions", sign_conventions()}};
}

std::optional<double> resolve_Gamma(const RunConfig& c) {
    if (c.Gamma) {
        if (c.gamma || c.u0 || c.alpha) throw InvalidArgument("give either --Gamma or --gamma with --u0/--alpha, not both");
        return c.Gamma;
    }
    if (!c.gamma) {
        if (c.u0 || c.alpha) throw InvalidArgument("--u0/--alpha need --gamma");
        return std::nullopt;
    }
    if (c.dimension == 2 ? (!c.alpha || c.u0) : (!c.u0 || c.alpha))
        throw InvalidArgument(c.dimension == 2 ? "planar problems take --gamma with --alpha"
                                               : "--gamma needs --u0 (and no --alpha) for N >= 3");
    ProblemData d;
    d.dimension = c.dimension;
    d.gamma = *c.gamma;
    d.R0 = c.R0;
    if (c.u0) d.u0 = *c.u0;
    if (c.alpha) d.alpha = *c.alpha;
    return normalize(d).Gamma;
}

double require_Gamma(const RunConfig& c) {
    const auto g = resolve_Gamma(c);
    if (!g) throw InvalidArgument(c.command + " needs --Gamma or --gamma with --u0/--alpha");
    return *g;
}

StarDomain load_domain(const RunConfig& c) {
    if (!c.domain_path.empty()) {
        if (!std::filesystem::exists(c.domain_path))
            throw InvalidArgument("domain file " + c.domain_path.string() + " does not exist");
        StarDomain d = read_domain(c.domain_path);
        if (d.dimension() != c.dimension) throw InvalidArgument("domain file dimension differs from --dimension");
        return d;
    }
    if (c.coefficients.empty()) throw InvalidArgument(c.command + " needs --domain or --coefficients");
    return StarDomain(c.dimension, c.coefficients);
}

std::string fraction(long long num, long long den) {
    const long long g = std::gcd(num, den);
    num /= g;
    den /= g;
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::string plot_text(const std::vector<std::pair<double, double>>& xy, const std::string& xname, const std::string& yname) {
    std::ostringstream os;
    os << "# " << xname << ' ' << yname << '\n';
    for (auto [x, y] : xy) os << format_number(x) << ' ' << format_number(y) << '\n';
    return os.str();
}

struct Output {
    std::filesystem::path dir;
    std::string command;
    std::filesystem::path file(const std::string& suffix) const { return dir / (command + suffix); }
};

void finish(const Output& o, const RunConfig& c, json results, const Checks& checks, std::ostream& out) {
    json report = header(c);
    report["results"] = std::move(results);
    report["summary"] = checks.summary();
    write_json(o.file(".json"), report);
    write_json(o.file("_summary.json"), checks.summary());
    out << "checks: " << checks.items.size() << ", failed: " << checks.failed() << "\n";
    for (const auto& [name, ok] : checks.items)
        if (!ok) out << "  FAILED " << name << "\n";
    out << "output: " << o.dir.string() << "\n";
}

void run_normalize(const RunConfig& c, const Output& o, json& results, Checks&, std::ostream& out) {
    if (!c.gamma) throw InvalidArgument("normalize needs --gamma with --u0 (or --alpha in the plane)");
    ProblemData d;
    d.dimension = c.dimension;
    d.gamma = *c.gamma;
    d.R0 = c.R0;
    if (c.u0) d.u0 = *c.u0;
    if (c.alpha) d.alpha = *c.alpha;
    if (c.dimension == 2 && c.u0) throw InvalidArgument("planar problems take --alpha, not --u0");
    if (c.dimension != 2 && c.alpha) throw InvalidArgument("--alpha applies to planar problems only");
    const NormalizedProblem n = normalize(d);
    const double C0 = compatibility_constant(d);
    results = {{"Gamma", n.Gamma}, {"C0", C0}, {"lambda", n.lambda()}, {"target_volume", n.target_volume}};
    out << "Gamma = " << format_number(n.Gamma) << "\nC0 = " << format_number(C0) << "\n";
    if (c.dimension >= 3 && n.Gamma != 0) {
        const ConformalScalars s = conformal_scalars(n.Gamma, c.dimension);
        results["conformal"] = {{"H_conformal", s.H_conformal}, {"scalar_threshold", s.scalar_threshold},
                                {"scalar_sign", s.scalar_sign}};
    }
    CsvTable t({"N", "Gamma", "C0", "lambda", "target_volume"});
    t.row({cell(c.dimension), cell(n.Gamma), cell(C0), cell(n.lambda()), cell(n.target_volume)});
    t.write(o.file(".csv"));
}

void run_identities(const RunConfig& c, const Output& o, json& results, Checks& checks, std::ostream& out) {
    const StarDomain d = load_domain(c);
    const auto G = resolve_Gamma(c);
    if (c.dimension == 3 && !G) throw InvalidArgument("identities in N = 3 need --Gamma for the defect identity");
    ExteriorExpansion e;
    if (c.basis_solver) {
        const int unknowns = c.dimension == 2 ? 2 * c.truncation + 1 : c.truncation + 1;
        e = solve_dirichlet(d, c.truncation, c.collocation > 0 ? c.collocation : 4 * unknowns);
    } else {
        LayerOptions opt;
        opt.nodes = c.solve.collocation_count;
        e = solve_capacitary(d, opt);
    }
    std::vector<IdentityReport> reports = identity_suite(e, d, G.value_or(0.0));
    if (c.dimension == 3 && c.p != 2) reports.push_back(am_inequality(e, d, c.p));
    CsvTable t = identity_table();
    append_identity_rows(t, "domain", reports);
    t.write(o.file(".csv"));
    grid_csv(matching_grid(e, d)).write(o.file("_grid.csv"));
    write_json(o.file("_expansion.json"), to_json(e));

    json rows = json::array();
    for (const auto& r : reports) {
        rows.push_back(to_json(r));
        checks.add(r.name, r.satisfied);
        out << std::left << std::setw(26) << r.name << " lhs " << std::setw(24) << format_number(r.lhs) << " rhs "
            << std::setw(24) << format_number(r.rhs) << " rel_gap " << format_number(r.rel_gap)
            << (r.satisfied ? "" : "  FAIL") << "\n";
    }
    results = {{"domain", to_json(d)}, {"fit_residual", e.fit_residual}, {"identities", rows}};
    if (G) {
        const ResidualSamples res = residual_from_trace(matching_grid(e, d), neumann_trace(e, matching_grid(e, d)), *G);
        results["Gamma"] = *G;
        results["overdetermined_residual_l2"] = res.l2_norm;
        if (c.dimension == 3) results["rigidity_chain"] = to_json(rigidity_chain(e, d, *G));
    }
}

void run_spectrum(const RunConfig& c, const Output& o, json& results, Checks& checks, std::ostream& out) {
    const int N = c.dimension;
    std::vector<int> modes = c.modes;
    if (modes.empty()) modes = N == 2 ? parse_modes("0..8") : parse_modes("0..6");
    std::vector<double> Gammas = c.Gammas;
    if (Gammas.empty()) Gammas = N == 2 ? std::vector<double>{-1, 0, 1.0 / 3, 0.5, 1, 2} : std::vector<double>{0, 0.5, 1, 1.5};
    const std::vector<ModeEigenvalue> table = spectrum_table(N, Gammas, modes, c.fd_step);

    CsvTable t({"N", "l", "Gamma", "analytic", "numeric", "gap"});
    json rows = json::array();
    std::map<int, std::vector<std::pair<double, double>>> plots;
    for (const auto& m : table) {
        std::string analytic, gap;
        if (m.analytic_value) {
            const double g = std::abs(m.numeric_value - *m.analytic_value);
            analytic = cell(*m.analytic_value);
            gap = cell(g);
            checks.add("planar mode " + std::to_string(m.mode) + " at Gamma " + format_number(m.Gamma), g <= 1e-5);
        }
        if (m.mode == 1)
            checks.add("translation mode vanishes at Gamma " + format_number(m.Gamma), std::abs(m.numeric_value) <= 1e-8);
        t.row({cell(N), cell(m.mode), cell(m.Gamma), analytic, cell(m.numeric_value), gap});
        rows.push_back(to_json(m));
        plots[m.mode].emplace_back(m.Gamma, m.numeric_value);
    }
    t.write(o.file(".csv"));

    CsvTable roots({"N", "l", "analytic_root", "numeric_root", "gap"});
    json root_rows = json::array();
    for (int l : modes) {
        if (l == 1) continue;
        const double a = bifurcation_value(N, l), r = numeric_bifurcation_root(N, l, c.fd_step);
        roots.row({cell(N), cell(l), cell(a), cell(r), cell(std::abs(r - a))});
        root_rows.push_back({{"l", l}, {"analytic_root", a}, {"numeric_root", r}});
        checks.add("root of mode " + std::to_string(l), std::abs(r - a) <= 1e-6);
        out << "mode " << l << ": bifurcation value " << format_number(a) << ", numeric root " << format_number(r) << "\n";
    }
    roots.write(o.file("_roots.csv"));
    for (const auto& [l, xy] : plots) write_text(o.file("_plot_l" + std::to_string(l) + ".dat"), plot_text(xy, "Gamma", "eigenvalue"));
    results = {{"eigenvalues", rows}, {"roots", root_rows}};
}

void run_bifurcations(const RunConfig& c, const Output& o, json& results, Checks&, std::ostream& out) {
    const int N = c.dimension;
    if (N < 2) throw InvalidArgument("bifurcations: dimension must be at least 2");
    std::vector<int> modes = c.modes.empty() ? parse_modes("2..10") : c.modes;
    CsvTable t({"N", "l", "Gamma", "exact"});
    json rows = json::array();
    for (int l : modes) {
        const double g = bifurcation_value(N, l);
        std::string exact;
        if (N == 2) exact = fraction(1, l + 1);
        else if (l == 0) exact = std::to_string(N - 2);
        else exact = fraction(static_cast<long long>(N - 1) * (N - 2), l + N - 1);
        t.row({cell(N), cell(l), cell(g), exact});
        rows.push_back({{"N", N}, {"l", l}, {"Gamma", g}, {"exact", exact}});
        out << "N=" << N << " l=" << l << " Gamma=" << format_number(g) << " (" << exact << ")\n";
    }
    t.write(o.file(".csv"));
    results = {{"bifurcation_values", rows}};
}

void run_branch(const RunConfig& c, const Output& o, json& results, Checks& checks, std::ostream& out) {
    const int N = c.dimension;
    const BranchResult b = continue_branch(N, c.mode, c.steps, c.ds, c.solve, c.volume);
    CsvTable t({"index", "Gamma", "amplitude", "residual_norm", "radial_mode"});
    json rows = json::array();
    std::vector<std::pair<double, double>> xy;
    const std::vector<int> sym = symmetric_modes(N, c.mode, 1 << 20);
    for (std::size_t i = 0; i < b.points.size(); ++i) {
        const BranchPoint& p = b.points[i];
        t.row({cell(static_cast<int>(i)), cell(p.Gamma), cell(p.amplitude), cell(p.residual_norm),
               cell(p.domain.coefficients()[0])});
        rows.push_back(to_json(p));
        xy.emplace_back(p.Gamma, p.amplitude);
        checks.add("point " + std::to_string(i) + " residual", p.residual_norm <= c.solve.residual_tolerance);
        // Coefficients outside the symmetry class must vanish.
        double off = 0;
        const auto& cf = p.domain.coefficients();
        for (std::size_t k = 1; k < cf.size(); ++k) {
            const int m = N == 2 ? static_cast<int>(k + 1) / 2 : static_cast<int>(k);
            const bool sine = N == 2 && k % 2 == 0;
            const bool symmetric = !sine && m != 1 && (N == 2 ? m % c.mode == 0 : (c.mode % 2 ? true : m % 2 == 0));
            if (!symmetric) off = std::max(off, std::abs(cf[k]));
        }
        checks.add("point " + std::to_string(i) + " symmetry", off <= 1e-10);
        out << "Gamma " << format_number(p.Gamma) << "  amplitude " << format_number(p.amplitude) << "  residual "
            << format_number(p.residual_norm) << "\n";
    }
    checks.add("branch completed", !b.truncated);
    if (b.truncated) out << "truncated: " << b.diagnostic << "\n";
    t.write(o.file(".csv"));
    write_text(o.file("_plot.dat"), plot_text(xy, "Gamma", "amplitude"));
    results = {{"mode", c.mode},
               {"volume", c.volume == VolumeMode::free ? "free" : "fixed"},
               {"points", rows},
               {"truncated", b.truncated},
               {"diagnostic", b.diagnostic}};
}

void run_sweep(const RunConfig& c, const Output& o, json& results, Checks& checks, std::ostream& out) {
    const int N = c.dimension;
    std::vector<double> Gammas = c.Gammas;
    if (Gammas.empty()) Gammas = N == 2 ? std::vector<double>{-1, 0, 1.0 / 3, 0.5, 1, 2} : std::vector<double>{-0.5, 0, 1, 1.5, 2};
    SolveOptions opt = c.solve;
    opt.seed = c.seed;
    const std::vector<SweepRow> rows = rigidity_sweep(N, Gammas, c.seeds, opt);
    CsvTable t({"Gamma", "seed", "converged", "iterations", "residual_norm", "volume_gap", "distance_to_ball", "message"});
    json js = json::array();
    std::vector<std::pair<double, double>> xy;
    int failed = 0;
    for (const auto& r : rows) {
        const SolveReport& s = r.report;
        t.row({cell(r.Gamma), cell(r.seed), cell(s.converged), cell(s.iterations), cell(s.residual_norm),
               cell(s.volume_gap), cell(s.distance_to_ball), s.message});
        js.push_back({{"Gamma", r.Gamma}, {"seed", r.seed}, {"report", to_json(s)}});
        if (!s.converged) {
            ++failed;
            continue;
        }
        xy.emplace_back(r.Gamma, s.distance_to_ball);
        // Rigidity is claimed for every Gamma in the plane and for Gamma <= 0 or Gamma >= N - 2 otherwise.
        const bool rigid = N == 2 || r.Gamma <= 0 || r.Gamma >= N - 2;
        if (rigid)
            checks.add("ball at Gamma " + format_number(r.Gamma) + " seed " + std::to_string(r.seed),
                       s.distance_to_ball <= 1e-6);
    }
    const double rate = rows.empty() ? 0.0 : double(failed) / rows.size();
    checks.add("non-convergence rate", rate <= 0.2);
    out << rows.size() << " solves, " << failed << " not converged\n";
    t.write(o.file(".csv"));
    write_text(o.file("_plot.dat"), plot_text(xy, "Gamma", "distance_to_ball"));
    results = {{"rows", js}, {"nonconvergence_rate", rate}};
}

void run_solve(const RunConfig& c, const Output& o, json& results, Checks& checks, std::ostream& out) {
    const double G = require_Gamma(c);
    const StarDomain d = load_domain(c);
    const SolveReport r = solve_shape(c.dimension, G, d, c.solve);
    CsvTable t({"Gamma", "converged", "iterations", "residual_norm", "volume_gap", "distance_to_ball"});
    t.row({cell(G), cell(r.converged), cell(r.iterations), cell(r.residual_norm), cell(r.volume_gap), cell(r.distance_to_ball)});
    t.write(o.file(".csv"));
    write_json(o.file("_domain.json"), to_json(r.final_domain));
    checks.add("converged", r.converged);
    out << "converged " << r.converged << ", iterations " << r.iterations << ", residual " << format_number(r.residual_norm)
        << ", distance to ball " << format_number(r.distance_to_ball) << "\n";
    results = {{"Gamma", G}, {"report", to_json(r)}};
}

} // namespace

std::vector<int> parse_modes(const std::string& text) {
    std::vector<int> out;
    auto integer = [&](const std::string& s) {
        std::size_t pos = 0;
        int v;
        try {
            v = std::stoi(s, &pos);
        } catch (const std::exception&) {
            throw InvalidArgument("bad mode list: " + text);
        }
        if (pos != s.size() || v < 0) throw InvalidArgument("bad mode list: " + text);
        return v;
    };
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int a = integer(text.substr(0, dots)), b = integer(text.substr(dots + 2));
        if (b < a) throw InvalidArgument("empty mode range: " + text);
        for (int l = a; l <= b; ++l) out.push_back(l);
        return out;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(integer(item));
    if (out.empty()) throw InvalidArgument("empty mode list");
    return out;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    auto real = [&](const std::string& s) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw InvalidArgument("bad number list: " + text);
        }
        if (pos == s.size()) return v;
        if (s[pos] != '/') throw InvalidArgument("bad number list: " + text);
        const std::string rest = s.substr(pos + 1);
        std::size_t p2 = 0;
        double den;
        try {
            den = std::stod(rest, &p2);
        } catch (const std::exception&) {
            throw InvalidArgument("bad number list: " + text);
        }
        if (p2 != rest.size() || den == 0) throw InvalidArgument("bad number list: " + text);
        return v / den;
    };
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(real(item));
    if (out.empty()) throw InvalidArgument("empty number list");
    return out;
}

RunConfig parse_command_line(int argc, const char* const* argv, std::string* help) {
    RunConfig c;
    CLI::App app{"Exterior overdetermined free boundary toolkit"};
    app.add_option("command", c.command, "solve | identities | spectrum | bifurcations | branch | sweep | normalize")
        ->required()
        ->check(CLI::IsMember(commands));
    CLI::Option* oN = app.add_option("--dimension,-N", c.dimension, "space dimension (default: from --domain, else 3)");
    double Gamma = 0, gamma = 0, u0 = 0, alpha = 0;
    auto* oG = app.add_option("--Gamma", Gamma, "normalized coupling");
    auto* og = app.add_option("--gamma", gamma, "curvature coupling of the original problem");
    auto* ou = app.add_option("--u0", u0, "Dirichlet level of the original problem");
    auto* oa = app.add_option("--alpha", alpha, "planar log strength of the original problem");
    app.add_option("--R0", c.R0, "volume radius of the original problem");
    std::string domain, coefficients, modes, gammas, volume = "free", solver = "layer";
    app.add_option("--domain", domain, "domain JSON file");
    app.add_option("--coefficients", coefficients, "inline radial coefficients, comma separated");
    app.add_option("--modes", modes, "modes, e.g. 2..6 or 2,3,5");
    app.add_option("--gammas", gammas, "Gamma values, comma separated, fractions allowed");
    app.add_option("--mode", c.mode, "branch mode");
    app.add_option("--steps", c.steps, "continuation steps");
    app.add_option("--ds", c.ds, "arclength step");
    app.add_option("--volume", volume, "branch volume handling: free or fixed")->check(CLI::IsMember({"free", "fixed"}));
    app.add_option("--seeds", c.seeds, "random shapes per Gamma");
    app.add_option("--seed", c.seed, "base seed");
    app.add_option("--fd-step", c.fd_step, "finite-difference step of the spectrum");
    app.add_option("--p", c.p, "AM inequality exponent");
    app.add_option("--solver", solver, "identities solver: layer or basis")->check(CLI::IsMember({"layer", "basis"}));
    app.add_option("--truncation", c.truncation, "basis truncation");
    app.add_option("--collocation", c.collocation, "basis collocation count");
    app.add_option("--nodes", c.solve.collocation_count, "layer node count (0 = adaptive)");
    app.add_option("--shape-truncation", c.solve.truncation, "highest shape mode of the shape solver");
    app.add_option("--max-iterations", c.solve.max_iterations, "shape solver iteration cap");
    app.add_option("--tolerance", c.solve.residual_tolerance, "residual tolerance");
    app.add_option("--damping", c.solve.step_damping, "Levenberg-Marquardt step damping");
    app.add_option("--volume-weight", c.solve.volume_weight, "weight of the volume constraint row");
    std::string output;
    app.add_option("--output,-o", output, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        if (help) *help = app.help();
        c.command.clear();
        return c;
    } catch (const CLI::ParseError& e) {
        throw InvalidArgument(e.what());
    }
    if (oG->count()) c.Gamma = Gamma;
    if (og->count()) c.gamma = gamma;
    if (ou->count()) c.u0 = u0;
    if (oa->count()) c.alpha = alpha;
    if (!domain.empty()) {
        c.domain_path = domain;
        if (!oN->count() && std::filesystem::exists(c.domain_path)) c.dimension = read_domain(c.domain_path).dimension();
    }
    if (!coefficients.empty()) c.coefficients = parse_reals(coefficients);
    if (!modes.empty()) c.modes = parse_modes(modes);
    if (!gammas.empty()) c.Gammas = parse_reals(gammas);
    c.volume = volume == "fixed" ? VolumeMode::fixed : VolumeMode::free;
    c.basis_solver = solver == "basis";
    if (!output.empty()) c.output_dir = output;
    c.solve.seed = c.seed;
    c.solve.validate();
    return c;
}

std::filesystem::path resolve_output_dir(const RunConfig& c) {
    if (!c.output_dir.empty()) return c.output_dir;
    if (const char* env = std::getenv(output_dir_variable); env && *env) return env;
    return "exfb_out";
}

int run(const RunConfig& c, std::ostream& out) {
    if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
        throw InvalidArgument("unknown command " + c.command);
    if (c.command != "normalize") resolve_Gamma(c);  // rejects conflicting parameter sets
    const Output o{resolve_output_dir(c), c.command};
    json results;
    Checks checks;
    if (c.command == "normalize") run_normalize(c, o, results, checks, out);
    else if (c.command == "identities") run_identities(c, o, results, checks, out);
    else if (c.command == "spectrum") run_spectrum(c, o, results, checks, out);
    else if (c.command == "bifurcations") run_bifurcations(c, o, results, checks, out);
    else if (c.command == "branch") run_branch(c, o, results, checks, out);
    else if (c.command == "sweep") run_sweep(c, o, results, checks, out);
    else run_solve(c, o, results, checks, out);
    finish(o, c, std::move(results), checks, out);
    return checks.failed() == 0 ? 0 : 1;
}

} // namespace exfb
