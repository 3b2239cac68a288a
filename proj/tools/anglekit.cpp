// anglekit command-line front end.
//
//   anglekit spectrum      --construction wh --t 0 --dim 8
//   anglekit lower-symbol  --construction wh --t 0 --J 100 --dim 160 --gamma-grid 64
//   anglekit commutator    --construction halfcircle --dim 128 --windows 8,16,32
//   anglekit check all
//
// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "anglekit/checks.hpp"
#include "anglekit/circlecs.hpp"
#include "anglekit/errors.hpp"
#include "anglekit/halfcircle.hpp"
#include "anglekit/kernels.hpp"
#include "anglekit/linalg.hpp"
#include "anglekit/whquant.hpp"

using namespace anglekit;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string construction = "wh";
    int dim = 64;
    std::string mode = "two-sided";
    double t = 0.0;
    double sigma = 1.0;
    std::string pdf_table;
    int harmonics = 0;  // canonical B: 0 means dim/2
    std::string op = "angle";
    double J = 10.0;
    int gamma_grid = 64;
    std::vector<int> windows{4, 8, 16};
    std::string suite = "all";
    std::string output = "-";
    std::string format = "csv";
    int threads = 0;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

BasisSpec make_basis(const ExperimentConfig& c) {
    const BasisMode m = parse_basis_mode(c.mode);
    switch (m) {
        case BasisMode::one_sided: return BasisSpec::one_sided(c.dim);
        case BasisMode::two_sided: return BasisSpec::two_sided(c.dim);
        case BasisMode::cyclic: return BasisSpec::cyclic(c.dim);
    }
    throw UsageError("unknown mode");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

DistributionSpec make_distribution(const ExperimentConfig& c) {
    if (c.pdf_table.empty()) return DistributionSpec::gaussian(c.sigma);
    std::ifstream in(c.pdf_table);
    if (!in) throw UsageError("cannot open pdf table '" + c.pdf_table + "'");
    std::vector<double> J, p;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 2) throw UsageError("pdf table: expected two columns J,p");
        try {
            J.push_back(std::stod(cells[0]));
            p.push_back(std::stod(cells[1]));
        } catch (const std::invalid_argument&) {
            if (J.empty()) continue;  // header row
            throw UsageError("pdf table: non-numeric row '" + line + "'");
        }
    }
    auto d = DistributionSpec::from_table(std::move(J), std::move(p), c.sigma);
    d.validate();
    return d;
}

double construction_param(const ExperimentConfig& c) {
    if (c.construction == "wh") return c.t;
    if (c.construction == "circle") return c.sigma;
    if (c.construction == "canonical") return c.harmonics > 0 ? c.harmonics : c.dim / 2;
    return 0.0;
}

// ------------------------------------------------------------ commands

int cmd_spectrum(const ExperimentConfig& c) {
    TruncatedOperator A;
    if (c.construction == "halfcircle") {
        const auto fam = build_shift_family(make_basis(c));
        A = c.op == "full" ? full_angle(fam) : angle_upper(cos_sin(fam).C);
    } else if (c.construction == "wh") {
        A = angle_matrix(c.t, c.dim);
    } else if (c.construction == "circle") {
        const auto b = BasisSpec::two_sided(c.dim);
        A = quantize_cyl_phi(sawtooth_coefficients(c.dim - 1), make_distribution(c), b);
    } else if (c.construction == "canonical") {
        const BasisSpec b = c.mode == "cyclic" ? BasisSpec::cyclic(c.dim) : BasisSpec::two_sided(c.dim);
        A = canonical_angle_B(b, static_cast<int>(construction_param(c)));
    } else {
        throw UsageError("unknown construction '" + c.construction + "'");
    }
    const auto es = hermitian_eig(A);
    Output out(c.output);
    auto& os = out.os();
    if (c.format == "json") {
        nlohmann::ordered_json j;
        j["construction"] = c.construction;
        j["D"] = A.dim();
        j["param"] = construction_param(c);
        j["eigenvalues"] = es.eigenvalues;
        os << j.dump(2) << '\n';
        return kExitPass;
    }
    os << "construction,D,param,index,eigenvalue\n";
    for (std::size_t i = 0; i < es.eigenvalues.size(); ++i)
        os << c.construction << ',' << A.dim() << ',' << fmt(construction_param(c)) << ',' << i << ','
           << fmt(es.eigenvalues[i]) << '\n';
    return kExitPass;
}

int cmd_lower_symbol(const ExperimentConfig& c) {
    if (c.gamma_grid < 1) throw UsageError("gamma-grid must be >= 1");
    std::vector<double> grid;
    for (int k = 0; k < c.gamma_grid; ++k) grid.push_back(kTwoPi * k / c.gamma_grid);
    std::vector<cplx> vals;
    if (c.construction == "wh") {
        const auto w = WeightSpec::thermal(c.t);
        const auto A = c.op == "commutator" ? action_angle_commutator(c.t, c.dim) : angle_matrix(c.t, c.dim);
        vals = lower_symbol_grid(A, w, c.J, grid);
    } else if (c.construction == "circle") {
        const auto d = make_distribution(c);
        const auto b = BasisSpec::two_sided(c.dim, static_cast<int>(std::lround(c.J)) - c.dim / 2);
        TruncatedOperator A = quantize_cyl_phi(sawtooth_coefficients(c.dim - 1), d, b);
        if (c.op == "commutator") A = commutator_number_angle(d, b, 0).matrix_route;
        for (double phi : grid) vals.push_back(lower_symbol_cyl(A, d, {c.J, phi}));
    } else {
        throw UsageError("lower-symbol supports constructions wh and circle");
    }
    Output out(c.output);
    auto& os = out.os();
    os << "J,gamma_or_phi,re,im\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << fmt(c.J) << ',' << fmt(grid[i]) << ',' << fmt(vals[i].real()) << ',' << fmt(vals[i].imag()) << '\n';
    return kExitPass;
}

int cmd_commutator(const ExperimentConfig& c) {
    Output out(c.output);
    auto& os = out.os();
    os << "construction,D,window_lo,window_hi,defect\n";
    if (c.construction == "halfcircle") {
        const auto fam = build_shift_family(make_basis(c));
        const auto cs = cos_sin(fam);
        const auto sig = sigma_isometry(cs.S);
        const auto ang = angle_upper(cs.C);
        for (int w : c.windows) {
            const LabelWindow win{-w, w};
            os << "halfcircle," << c.dim << ',' << -w << ',' << w << ','
               << fmt(commutator_defect(fam, ang, sig, win)) << '\n';
        }
    } else if (c.construction == "circle") {
        const auto d = make_distribution(c);
        const auto b = BasisSpec::two_sided(c.dim);
        const auto r = commutator_number_angle(d, b, 0);
        for (int w : c.windows)
            os << "circle," << c.dim << ',' << -w << ',' << w << ','
               << fmt(op_norm_max(window_restrict(r.matrix_route - r.direct, -w, w))) << '\n';
    } else if (c.construction == "wh") {
        // [A_z, A_z̄] − I on the top-left block of size w.
        const auto w8 = WeightSpec::thermal(c.t);
        const auto az = quantize(PhaseFunction::z(), w8, {}, c.dim);
        const auto azb = quantize(PhaseFunction::zbar(), w8, {}, c.dim);
        const auto com = commutator(az, azb);
        for (int w : c.windows) {
            if (w < 1 || w > c.dim) throw UsageError("window larger than dim");
            const auto blk = com.entries.block(0, 0, w, w) - Matrix::identity(w);
            os << "wh," << c.dim << ',' << 0 << ',' << w - 1 << ',' << fmt(blk.max_abs()) << '\n';
        }
    } else {
        throw UsageError("commutator supports constructions halfcircle, circle and wh");
    }
    return kExitPass;
}

int cmd_check(const ExperimentConfig& c) {
    CheckOptions opt;
    opt.dim = c.dim;
    opt.mode = parse_basis_mode(c.mode);
    if (c.suite != "all" && std::find(suite_names().begin(), suite_names().end(), c.suite) == suite_names().end())
        throw UsageError("unknown check suite '" + c.suite + "'");
    const auto results = run_suite(c.suite, opt);
    const bool ok = all_passed(results);
    Output out(c.output);
    if (c.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            nlohmann::ordered_json j;
            j["suite"] = r.suite;
            j["invariant"] = r.invariant;
            j["status"] = to_string(r.status);
            j["measured"] = r.measured;
            j["tolerance"] = r.tolerance;
            arr.push_back(std::move(j));
        }
        out.os() << arr.dump(2) << '\n';
        if (c.output == "-") return ok ? kExitPass : kExitCheckFailed;
    }
    // Text report: to the output file in text mode, to stdout alongside a JSON file.
    std::ostream& os = c.format == "json" ? std::cout : out.os();
    for (const auto& r : results)
        os << '[' << to_string(r.status) << "] " << r.suite << ' ' << r.invariant << " measured=" << fmt(r.measured)
           << " tol=" << fmt(r.tolerance) << '\n';
    os << (ok ? "all checks passed" : "some checks failed") << '\n';
    return ok ? kExitPass : kExitCheckFailed;
}

// ------------------------------------------------------------ config file

// Flat key=value file; keys are long flag names without the dashes. Values
// are placed before the command-line arguments so that flags win.
std::vector<std::string> config_tokens(const std::string& path, CLI::App* sub) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "suite" && sub->get_name() == "check") {
            tokens.push_back(value);
            continue;
        }
        if (sub->get_option_no_throw("--" + key) == nullptr)
            throw UsageError("config: unknown key '" + key + "' for command '" + sub->get_name() + "'");
        tokens.push_back("--" + key);
        tokens.push_back(value);
    }
    return tokens;
}

void add_common(CLI::App* s, ExperimentConfig& c) {
    s->add_option("--dim", c.dim, "truncation dimension D")->capture_default_str()->check(CLI::Range(4, 4096));
    s->add_option("--mode", c.mode, "basis mode")
        ->capture_default_str()
        ->check(CLI::IsMember({"one_sided", "two_sided", "cyclic", "one-sided", "two-sided"}));
    s->add_option("--output", c.output, "output path, - for stdout")->capture_default_str();
    s->add_option("--threads", c.threads, "OpenMP threads (default: ANGLEKIT_THREADS or all)")
        ->check(CLI::Range(1, 1024));
}

void add_construction(CLI::App* s, ExperimentConfig& c) {
    s->add_option("--construction", c.construction, "halfcircle | wh | circle | canonical")
        ->capture_default_str()
        ->check(CLI::IsMember({"halfcircle", "wh", "circle", "canonical"}));
    s->add_option("--t", c.t, "thermal ratio t in [0, 1) (wh)")->capture_default_str()->check(CLI::Range(0.0, 0.999999));
    s->add_option("--sigma", c.sigma, "Gaussian width (circle)")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--pdf-table", c.pdf_table, "CSV J,p table replacing the Gaussian (circle)");
    s->add_option("--harmonics", c.harmonics, "harmonics Q of the canonical operator (0: D/2)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    s->add_option("--format", c.format, "csv | json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    ExperimentConfig cfg;
    CLI::App app{"anglekit: quantum angle operators and their checks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value file mirroring the flags of the command");

    auto* spectrum = app.add_subcommand("spectrum", "sorted eigenvalues of an angle operator");
    add_common(spectrum, cfg);
    add_construction(spectrum, cfg);
    spectrum->add_option("--operator", cfg.op, "upper | full (halfcircle)")
        ->capture_default_str()
        ->check(CLI::IsMember({"angle", "upper", "full"}));

    auto* lower = app.add_subcommand("lower-symbol", "lower symbol of the angle operator on a grid");
    add_common(lower, cfg);
    add_construction(lower, cfg);
    lower->add_option("--J", cfg.J, "action J")->capture_default_str();
    lower->add_option("--gamma-grid", cfg.gamma_grid, "number of equispaced angles")
        ->capture_default_str()
        ->check(CLI::Range(1, 100000));
    lower->add_option("--operator", cfg.op, "angle | commutator")
        ->capture_default_str()
        ->check(CLI::IsMember({"angle", "commutator"}));

    auto* comm = app.add_subcommand("commutator", "commutator defect against window size");
    add_common(comm, cfg);
    add_construction(comm, cfg);
    comm->add_option("--windows", cfg.windows, "window half-widths (block sizes for wh)")
        ->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    auto* check = app.add_subcommand("check", "run an invariant suite");
    add_common(check, cfg);
    check->add_option("suite", cfg.suite, "suite name or all")->capture_default_str();
    check->add_option("--format", cfg.format, "text | json")->default_str("text")->check(CLI::IsMember({"text", "json"}));
    check->get_option("--mode")->default_str("cyclic");
    try {
        // Pre-scan for --config and the subcommand so file values can be spliced in.
        std::vector<std::string> args(argv + 1, argv + argc);
        std::string cfg_path;
        std::size_t sub_pos = args.size();
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) cfg_path = args[i + 1];
            if (args[i].rfind("--config=", 0) == 0) cfg_path = args[i].substr(9);
            if (sub_pos == args.size() && app.get_subcommand_no_throw(args[i]) != nullptr) sub_pos = i;
        }
        if (!cfg_path.empty() && sub_pos < args.size()) {
            const auto extra = config_tokens(cfg_path, app.get_subcommand(args[sub_pos]));
            args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, extra.begin(), extra.end());
        }
        // The check subcommand defaults to the cyclic halfcircle basis.
        if (sub_pos < args.size() && args[sub_pos] == "check") {
            cfg.mode = "cyclic";
            cfg.format = "text";
        }
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    int threads = cfg.threads;
    if (threads == 0) {
        if (const char* env = std::getenv("ANGLEKIT_THREADS")) {
            try {
                threads = std::stoi(env);
            } catch (const std::exception&) {
                std::cerr << "error: ANGLEKIT_THREADS is not an integer\n";
                return kExitUsage;
            }
            if (threads < 1) {
                std::cerr << "error: ANGLEKIT_THREADS must be >= 1\n";
                return kExitUsage;
            }
        }
    }
    if (threads > 0) kernels::set_threads(threads);

    try {
        if (*spectrum) return cmd_spectrum(cfg);
        if (*lower) return cmd_lower_symbol(cfg);
        if (*comm) return cmd_commutator(cfg);
        if (*check) return cmd_check(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SuiteFailure& e) {
        std::cerr << "numerical failure in suite " << e.suite() << ": " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
