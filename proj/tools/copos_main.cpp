// copos: decide copositivity of sparse signed-support polynomials on the
// positive orthant by single-path discriminant tracking, with interval
// certification and constructive SONC certificates.

#include <CLI11.hpp>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "copos/parse.hpp"
#include "copos/pipeline.hpp"

namespace {

constexpr int kExitInputError = 64;

copos::Signomial parse_input(const std::string& input) {
    std::string trimmed = input;
    auto first = trimmed.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("empty input");
    if (trimmed[first] == '{') return copos::parse_polynomial_json(nlohmann::json::parse(trimmed));
    return copos::parse_polynomial_text(trimmed);
}

std::vector<int> parse_height_spec(const std::string& spec, int n_minus) {
    std::vector<int> levels;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) levels.push_back(std::stoi(item));
    if (static_cast<int>(levels.size()) == 1 && n_minus > 1)
        levels.assign(n_minus, levels[0]);
    return levels;
}

struct CommonFlags {
    std::string height_spec;
    double tol = 1e-12;
    int max_steps = 10000;
    std::string trace_path;
    std::uint64_t seed = 0;
    bool no_size_limit = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--h", height_spec,
                        "height levels for a_minus (single value or comma list; default 1)");
        cmd->add_option("--tol", tol, "Newton residual tolerance (default 1e-12)");
        cmd->add_option("--max-steps", max_steps, "tracker step limit (default 10000)");
        cmd->add_option("--trace", trace_path, "write a CSV trace of accepted tracker steps");
        cmd->add_option("--seed", seed, "RNG seed for the fallback multistart");
        cmd->add_flag("--no-size-limit", no_size_limit, "disable the n <= 8 / 40-term guardrails");
    }

    copos::CheckOptions make_options(const copos::Signomial& f) const {
        copos::CheckOptions opt;
        if (!height_spec.empty())
            opt.height_levels =
                parse_height_spec(height_spec, static_cast<int>(f.support.minus.size()));
        opt.tracker.newton_tol = tol;
        opt.tracker.max_steps = max_steps;
        opt.tracker.trace_path = trace_path;
        opt.seed = seed;
        opt.enforce_size_limits = !no_size_limit;
        return opt;
    }
};

int cmd_check(const std::string& input, const CommonFlags& flags, bool json_out,
              bool assume_nonseparable, bool no_certify, const std::string& sonc_path) {
    copos::Signomial f = parse_input(input);
    copos::CheckOptions opt = flags.make_options(f);
    opt.assume_nonseparable = assume_nonseparable;
    opt.certify = !no_certify;
    copos::Report rep = copos::run_check(f, opt);
    if (json_out)
        std::cout << copos::report_to_json(rep).dump(2) << "\n";
    else
        std::cout << copos::report_to_text(rep);
    if (!sonc_path.empty() &&
        (rep.verdict.kind == copos::VerdictKind::Copositive ||
         rep.verdict.kind == copos::VerdictKind::TriviallyCopositive)) {
        copos::SoncOptions sopt;
        if (opt.height_levels)
            sopt.heights = copos::HeightFunction::from_minus_levels(f.support, *opt.height_levels);
        sopt.tracker = opt.tracker;
        copos::SoncCertificate cert = copos::sonc_certificate(f, sopt);
        std::ofstream out(sonc_path);
        out << copos::certificate_to_json(cert).dump(2) << "\n";
        if (!json_out) std::cout << "certificate written to " << sonc_path << "\n";
    }
    return copos::exit_code_for(rep.verdict);
}

int cmd_sonc(const std::string& input, const CommonFlags& flags, const std::string& out_path,
             bool force) {
    copos::Signomial f = parse_input(input);
    copos::CheckOptions opt = flags.make_options(f);
    copos::Report rep = copos::run_check(f, opt);
    bool copositive = rep.verdict.kind == copos::VerdictKind::Copositive ||
                      rep.verdict.kind == copos::VerdictKind::TriviallyCopositive;
    if (rep.verdict.kind == copos::VerdictKind::NotCopositive ||
        rep.verdict.kind == copos::VerdictKind::TriviallyNegative) {
        std::cerr << "sonc: input is not copositive; no certificate exists\n";
        return 1;
    }
    if (!copositive && !force) {
        std::cerr << "sonc: verdict is " << copos::verdict_name(rep.verdict.kind)
                  << "; pass --force to emit a near-boundary certificate anyway\n";
        return 2;
    }
    copos::SoncOptions sopt;
    if (opt.height_levels)
        sopt.heights = copos::HeightFunction::from_minus_levels(f.support, *opt.height_levels);
    sopt.tracker = opt.tracker;
    copos::SoncCertificate cert = copos::sonc_certificate(f, sopt);
    nlohmann::json j = copos::certificate_to_json(cert);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_support(const std::string& input) {
    copos::Signomial f = parse_input(input);
    std::cout << copos::support_info(f).dump(2) << "\n";
    return 0;
}

int cmd_batch(const std::string& path, const CommonFlags& flags, int jobs) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "batch: cannot open " << path << "\n";
        return kExitInputError;
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);

    std::vector<std::string> results(lines.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= lines.size()) break;
            if (lines[i].find_first_not_of(" \t\r\n") == std::string::npos) {
                results[i] = "";
                continue;
            }
            nlohmann::json out;
            try {
                copos::Signomial f = parse_input(lines[i]);
                copos::CheckOptions opt = flags.make_options(f);
                out = copos::report_to_json(copos::run_check(f, opt));
            } catch (const std::exception& e) {
                out = {{"error", e.what()}, {"line", i + 1}};
            }
            out["seq"] = i + 1;
            results[i] = out.dump();
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& r : results)
        if (!r.empty()) std::cout << r << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"copositivity via signed discriminants: single-path homotopy tracking "
                 "with interval certification and SONC certificates"};
    app.require_subcommand(1);

    std::string input, sonc_path, out_path, batch_path;
    bool json_out = false, assume_nonseparable = false, no_certify = false, force = false;
    int jobs = 1;
    CommonFlags flags;

    auto* check = app.add_subcommand("check", "decide copositivity of a polynomial");
    check->add_option("polynomial", input, "polynomial (text grammar or JSON)")->required();
    check->add_flag("--json", json_out, "emit the report as JSON");
    check->add_flag("--nonseparable", assume_nonseparable,
                    "assert nonseparability and skip the detection step");
    check->add_flag("--no-certify", no_certify, "skip interval certification");
    check->add_option("--sonc", sonc_path, "also write a SONC certificate to this path");
    flags.attach(check);

    auto* sonc = app.add_subcommand("sonc", "emit a SONC certificate for a copositive polynomial");
    sonc->add_option("polynomial", input, "polynomial (text grammar or JSON)")->required();
    sonc->add_option("-o,--out", out_path, "output path (default stdout)");
    sonc->add_flag("--force", force, "emit a certificate even for a near-boundary verdict");
    flags.attach(sonc);

    auto* support = app.add_subcommand("support", "classify the signed support");
    support->add_option("polynomial", input, "polynomial (text grammar or JSON)")->required();

    auto* batch = app.add_subcommand("batch", "process an NDJSON file of polynomials");
    batch->add_option("file", batch_path, "NDJSON input, one polynomial per line")->required();
    batch->add_option("--jobs", jobs, "worker threads (default 1)");
    flags.attach(batch);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (check->parsed())
            return cmd_check(input, flags, json_out, assume_nonseparable, no_certify, sonc_path);
        if (sonc->parsed()) return cmd_sonc(input, flags, out_path, force);
        if (support->parsed()) return cmd_support(input);
        if (batch->parsed()) return cmd_batch(batch_path, flags, jobs);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
