#include "crashsuite/harness.hpp"

#include "crashsuite/error.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace crashsuite {

std::string_view to_string(Algorithm algo)
{
    switch (algo) {
    case Algorithm::RandomSearch: return "random-search";
    case Algorithm::OnePlusOneES: return "one-plus-one-es";
    }
    return "?";
}

Algorithm algorithm_from_string(std::string_view name)
{
    if (name == "random-search" || name == "random")
        return Algorithm::RandomSearch;
    if (name == "one-plus-one-es" || name == "1+1-es" || name == "es")
        return Algorithm::OnePlusOneES;
    throw Error(ErrorKind::InvalidArgument, fmt::format("unknown algorithm '{}'", name));
}

std::string run_log_file_name(const RunConfig& cfg)
{
    return fmt::format("{}_d{}_{}_s{}.csv", to_string(cfg.problem), cfg.dim, to_string(cfg.algorithm), cfg.seed);
}

namespace {

constexpr double kLo = -5.0;
constexpr double kHi = 5.0;

double reflect(double v)
{
    // Fold onto [lo, hi] with period 2 * (hi - lo).
    const double width = kHi - kLo;
    double u = std::fmod(v - kLo, 2.0 * width);
    if (u < 0.0)
        u += 2.0 * width;
    if (u > width)
        u = 2.0 * width - u;
    return std::clamp(kLo + u, kLo, kHi);
}

std::string now_iso()
{
    const auto now = std::chrono::system_clock::now();
    return fmt::format("{:%Y-%m-%dT%H:%M:%S}Z", fmt::gmtime(std::chrono::system_clock::to_time_t(now)));
}

class LogWriter {
public:
    LogWriter(const std::filesystem::path& path, const RunConfig& cfg) : out_(path, std::ios::binary | std::ios::trunc)
    {
        if (!out_)
            throw Error(ErrorKind::Io, "cannot open run log " + path.string());
        out_ << "# crashsuite run log\n";
        out_ << fmt::format("# problem={}\n", to_int(cfg.problem));
        out_ << fmt::format("# case={}\n", to_string(cfg.problem));
        out_ << fmt::format("# dim={}\n", cfg.dim);
        out_ << fmt::format("# objective={}\n", to_string(cfg.objective));
        out_ << fmt::format("# algorithm={}\n", to_string(cfg.algorithm));
        out_ << fmt::format("# budget={}\n", cfg.budget);
        out_ << fmt::format("# seed={}\n", cfg.seed);
        out_ << fmt::format("# mode={}\n", cfg.solver_path ? "external" : "mock");
        if (cfg.solver_path)
            out_ << fmt::format("# solver_path={}\n", cfg.solver_path->string());
        out_ << fmt::format("# cores={}\n", cfg.cores);
        out_ << fmt::format("# timeout_s={}\n", cfg.timeout_s);
        out_ << fmt::format("# vtk={}\n", cfg.write_vtk ? 1 : 0);
        out_ << "evaluation,y,best_y,status";
        for (int i = 1; i <= cfg.dim; ++i)
            out_ << ",x" << i;
        out_ << '\n';
        out_.flush();
    }

    void row(const LogRow& r)
    {
        out_ << fmt::format("{},{},{},{}", r.evaluation, r.y, r.best_y, r.status);
        for (double v : r.x_normalized)
            out_ << fmt::format(",{}", v);
        out_ << '\n';
        out_.flush();
    }

private:
    std::ofstream out_;
};

struct Outcome {
    double y;
    std::string status;
    std::string error;
};

}  // namespace

RunSummary run_optimizer(const RunConfig& cfg)
{
    if (cfg.budget < 1)
        throw Error(ErrorKind::InvalidArgument, "budget must be >= 1");
    SolverMode mode = MockSolver{};
    if (cfg.solver_path) {
        ExternalSolver ext;
        ext.solver_dir = *cfg.solver_path;
        mode = ext;
    }
    const auto problem = create_problem(cfg.problem, cfg.dim, {cfg.objective}, mode);

    EvaluateOptions opts;
    opts.work_root = cfg.work_root;
    opts.cores = cfg.cores;
    opts.timeout_s = cfg.timeout_s;
    opts.write_vtk = cfg.write_vtk;

    std::filesystem::create_directories(cfg.out_dir);
    RunSummary summary;
    summary.log_path = cfg.out_dir / run_log_file_name(cfg);
    LogWriter log(summary.log_path, cfg);
    std::ofstream timing(summary.log_path.string() + ".timing", std::ios::binary | std::ios::trunc);
    timing << "start=" << now_iso() << '\n';
    const auto t0 = std::chrono::steady_clock::now();

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uniform(kLo, kHi);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto d = static_cast<std::size_t>(cfg.dim);

    auto evaluate_point = [&](const std::vector<double>& x) -> Outcome {
        try {
            const auto r = evaluate(problem, x, opts);
            return {r.raw.at(cfg.objective), "ok", {}};
        } catch (const Error& e) {
            return {std::numeric_limits<double>::infinity(), std::string(to_string(e.kind())), e.what()};
        }
    };

    EsSettings es;
    double sigma = es.initial_sigma;
    std::vector<double> parent;
    double parent_y = std::numeric_limits<double>::infinity();
    int consecutive_failures = 0;

    for (int k = 1; k <= cfg.budget; ++k) {
        std::vector<double> x(d);
        if (cfg.algorithm == Algorithm::RandomSearch || parent.empty()) {
            for (auto& v : x)
                v = uniform(rng);
        } else {
            for (std::size_t i = 0; i < d; ++i)
                x[i] = reflect(parent[i] + sigma * normal(rng));
        }

        const auto outcome = evaluate_point(x);
        const bool ok = outcome.status == "ok";
        if (ok) {
            consecutive_failures = 0;
        } else {
            ++summary.failures;
            ++consecutive_failures;
            summary.last_error = outcome.error;
        }
        if (ok && (summary.best_x.empty() || outcome.y < summary.best_y)) {
            summary.best_y = outcome.y;
            summary.best_x = x;
        }
        log.row({k, outcome.y, summary.best_y, outcome.status, x});
        summary.evaluations = k;

        if (cfg.algorithm == Algorithm::OnePlusOneES) {
            if (parent.empty()) {
                if (ok) {
                    parent = x;
                    parent_y = outcome.y;
                }
            } else if (ok && outcome.y <= parent_y) {
                parent = x;
                parent_y = outcome.y;
                sigma = std::min(sigma * es.increase, es.max_sigma);
            } else {
                sigma = std::max(sigma * es.decrease, es.min_sigma);
            }
        }

        if (2 * consecutive_failures > cfg.budget) {
            summary.aborted = true;
            break;
        }
    }

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    timing << "end=" << now_iso() << '\n' << fmt::format("elapsed_s={:.3f}\n", elapsed.count());
    return summary;
}

std::vector<RunSummary> run_optimizers(const std::vector<RunConfig>& cfgs, int parallel)
{
    std::vector<RunSummary> results(cfgs.size());
    std::vector<std::exception_ptr> errors(cfgs.size());
    const auto workers = static_cast<std::size_t>(std::clamp<int>(parallel, 1, std::max<int>(1, static_cast<int>(cfgs.size()))));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < cfgs.size(); i = next.fetch_add(1)) {
            try {
                results[i] = run_optimizer(cfgs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return results;
}

namespace {

double parse_double(std::string_view s, int line)
{
    if (s == "inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorKind::MalformedNumber, fmt::format("line {}: '{}' is not a number", line, s));
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

RunLog read_run_log(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::MissingOutput, "cannot read run log " + path.string());
    RunLog log;
    log.config.out_dir = path.parent_path();
    std::map<std::string, std::string> meta;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                auto key = line.substr(1, eq - 1);
                key.erase(0, key.find_first_not_of(' '));
                meta[key] = line.substr(eq + 1);
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() < 4)
            throw Error(ErrorKind::MissingColumn, fmt::format("line {}: expected at least 4 fields", lineno));
        LogRow row;
        row.evaluation = static_cast<int>(parse_double(fields[0], lineno));
        row.y = parse_double(fields[1], lineno);
        row.best_y = parse_double(fields[2], lineno);
        row.status = std::string(fields[3]);
        for (std::size_t i = 4; i < fields.size(); ++i)
            row.x_normalized.push_back(parse_double(fields[i], lineno));
        log.rows.push_back(std::move(row));
    }

    auto get = [&](const char* key) -> const std::string& {
        const auto it = meta.find(key);
        if (it == meta.end())
            throw Error(ErrorKind::MissingColumn, fmt::format("run log lacks '{}' metadata", key));
        return it->second;
    };
    auto& c = log.config;
    c.problem = problem_from_int(std::stoi(get("problem")));
    c.dim = std::stoi(get("dim"));
    c.objective = objective_from_string(get("objective"));
    c.algorithm = algorithm_from_string(get("algorithm"));
    c.budget = std::stoi(get("budget"));
    c.seed = std::stoull(get("seed"));
    if (get("mode") == "external")
        c.solver_path = std::filesystem::path(get("solver_path"));
    c.cores = std::stoi(get("cores"));
    c.timeout_s = parse_double(get("timeout_s"), 0);
    c.write_vtk = get("vtk") == "1";
    return log;
}

}  // namespace crashsuite
