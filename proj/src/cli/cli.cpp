#include "trusty/cli.hpp"

#include "trusty/error.hpp"
#include "trusty/module_fa.hpp"
#include "trusty/module_ra.hpp"
#include "trusty/ni_uri.hpp"
#include "trusty/remote_check.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace trusty::cli {

namespace fs = std::filesystem;

namespace {

struct Io {
    std::ostream& out;
    std::ostream& err;
};

int worst(int a, int b) { return std::max(a, b); }

std::optional<rdf::Syntax> pick_syntax(const std::string& flag, const std::optional<std::string>& extension) {
    if (!flag.empty()) {
        auto s = rdf::syntax_from_name(flag);
        if (!s) throw Error("unknown --format: " + flag);
        return s;
    }
    if (extension) {
        auto last = extension->substr(extension->rfind('.') + 1);
        if (auto s = rdf::syntax_from_name(last)) return s;
    }
    return rdf::Syntax::nquads;
}

enum class RaMode { memory, large, sorted };

struct CheckOptions {
    std::string format;
    std::size_t memory_budget = ra::kDefaultMemoryBudget;
    std::string temp_dir;
};

CheckResult check_one(const fs::path& path, RaMode mode, const CheckOptions& opts) {
    TrustyUri name;
    try {
        name = extract_trusty_uri(path.filename().string());
    } catch (const Error& e) {
        return CheckResult::error("-", e.what());
    }
    const auto& code = name.code;
    if (!code.module().supported()) {
        return CheckResult::error(code.str(), "unsupported module: " + code.module().str());
    }
    if (code.module() == kModuleFA) {
        if (mode != RaMode::memory) return CheckResult::error(code.str(), "module FA has no RDF checker");
        return fa::check_file(path, code);
    }
    try {
        auto syntax = *pick_syntax(opts.format, name.extension);
        std::ifstream in(path, std::ios::binary);
        if (!in) return CheckResult::error(code.str(), "cannot open " + path.string());
        switch (mode) {
            case RaMode::memory: return ra::check_rdf(in, code, syntax);
            case RaMode::large: {
                ra::LargeOptions lo{opts.memory_budget, opts.temp_dir};
                return ra::check_large_rdf(in, code, lo, syntax);
            }
            case RaMode::sorted: return ra::check_sorted_rdf(in, code, syntax);
        }
    } catch (const std::exception& e) {
        return CheckResult::error(code.str(), e.what());
    }
    return CheckResult::error(code.str(), "unreachable");
}

int report(Io io, const CheckResult& r, std::string_view subject) {
    io.out << format_result(r, subject) << '\n';
    if (!r.message.empty()) io.err << subject << ": " << r.message << '\n';
    return exit_code(r.status);
}

void add_budget_option(CLI::App* cmd, std::string& budget_text) {
    cmd->add_option("--memory-budget", budget_text, "Sort memory budget (e.g. 256M); minimum 16M")
        ->default_val("256M");
}

std::size_t checked_budget(const std::string& text) {
    auto bytes = parse_byte_size(text);
    if (bytes < ra::kMinimumMemoryBudget) throw Error("--memory-budget must be at least 16M");
    return bytes;
}

fs::path output_dir_for(const fs::path& input, const std::string& flag) {
    if (!flag.empty()) return flag;
    auto parent = input.parent_path();
    return parent.empty() ? fs::path(".") : parent;
}

rdf::Dataset load_dataset(const fs::path& input, rdf::Syntax syntax) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw IoError("cannot open " + input.string());
    return rdf::parse_nquads(in, syntax);
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

int run_impl(const std::vector<std::string>& args, Io io);

int dispatch(CLI::App& app, const std::vector<std::string>& args, Io io) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        auto rc = app.exit(e, io.out, io.err);
        return rc == 0 ? 0 : 2;
    }
    return -1;
}

int run_impl(const std::vector<std::string>& args, Io io) {
    CLI::App app{"Generate and verify trusty URIs for files and RDF datasets", "trusty"};
    app.require_subcommand(1);

    std::vector<std::string> paths;
    std::string input;
    std::string base_uri;
    std::string format;
    std::string out_dir;
    std::string temp_dir;
    std::string budget_text = "256M";
    std::string source;
    std::string authority;
    bool include_module = false;
    int max_redirects = 5;
    double timeout_s = 30;
    unsigned jobs = 1;
    bool timing = false;

    auto* check = app.add_subcommand("check", "Check trusty files (module from the file name)");
    check->add_option("paths", paths, "Trusty files")->required();
    check->add_option("--format", format, "RDF syntax for RA files: nq or nt");

    auto* process = app.add_subcommand("process-file", "Rename a file into an FA trusty file");
    process->add_option("path", input)->required();

    auto* transform = app.add_subcommand("transform-rdf", "Transform an RDF file into an RA trusty file");
    auto* transform_large = app.add_subcommand("transform-large-rdf",
                                               "transform-rdf using temp files instead of memory");
    for (auto* cmd : {transform, transform_large}) {
        cmd->add_option("input", input)->required();
        cmd->add_option("--base-uri", base_uri)->required();
        cmd->add_option("--format", format);
        cmd->add_option("--out-dir", out_dir, "Directory for the trusty file (default: beside input)");
    }
    add_budget_option(transform_large, budget_text);
    transform_large->add_option("--temp-dir", temp_dir);

    auto* nanopub = app.add_subcommand("transform-nanopub", "Transform a nanopublication");
    nanopub->add_option("input", input)->required();
    nanopub->add_option("--format", format);
    nanopub->add_option("--out-dir", out_dir);

    auto* check_large = app.add_subcommand("check-large", "Check RA files using temp files");
    check_large->add_option("paths", paths)->required();
    check_large->add_option("--format", format);
    check_large->add_option("--temp-dir", temp_dir);
    add_budget_option(check_large, budget_text);

    auto* check_sorted = app.add_subcommand("check-sorted", "Check RA files that are already sorted");
    check_sorted->add_option("paths", paths)->required();
    check_sorted->add_option("--format", format);

    auto* fetch = app.add_subcommand("fetch-check", "Fetch a trusty URI over HTTP and check it");
    fetch->add_option("uri", input)->required();
    fetch->add_option("--source", source, "Fetch from this URL instead of the URI itself");
    fetch->add_option("--max-redirects", max_redirects)->check(CLI::NonNegativeNumber);
    fetch->add_option("--timeout", timeout_s, "Seconds")->check(CLI::PositiveNumber);

    auto* batch = app.add_subcommand("run-batch", "Run commands from a file, one per line");
    batch->add_option("file", input)->required();
    batch->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
    batch->add_flag("--timing", timing, "Append per-command wall time");

    auto* to_ni = app.add_subcommand("to-ni", "Convert a trusty URI to an ni URI");
    to_ni->add_option("uri", input)->required();
    to_ni->add_option("--authority", authority);
    to_ni->add_flag("--module", include_module, "Append ?module=<id>");

    auto* from_ni = app.add_subcommand("from-ni", "Show hash and candidate modules of an ni URI");
    from_ni->add_option("uri", input)->required();

    if (int rc = dispatch(app, args, io); rc >= 0) return rc;

    try {
        if (check->parsed() || check_large->parsed() || check_sorted->parsed()) {
            auto mode = check->parsed() ? RaMode::memory : check_large->parsed() ? RaMode::large : RaMode::sorted;
            CheckOptions opts{format, ra::kDefaultMemoryBudget, temp_dir};
            if (mode == RaMode::large) opts.memory_budget = checked_budget(budget_text);
            int rc = 0;
            for (const auto& p : paths) rc = worst(rc, report(io, check_one(p, mode, opts), p));
            return rc;
        }
        if (process->parsed()) {
            io.out << fa::process_file(input).string() << '\n';
            return 0;
        }
        if (transform->parsed() || nanopub->parsed()) {
            fs::path in(input);
            auto syntax = *pick_syntax(format, std::optional<std::string>(in.extension().string()));
            auto dataset = load_dataset(in, syntax);
            auto dir = output_dir_for(in, out_dir);
            auto result = transform->parsed() ? ra::transform_rdf(dataset, base_uri, dir)
                                              : ra::transform_nanopub(dataset, dir);
            io.out << result.uri.str() << '\n';
            return 0;
        }
        if (transform_large->parsed()) {
            fs::path in(input);
            auto syntax = *pick_syntax(format, std::optional<std::string>(in.extension().string()));
            std::ifstream stream(in, std::ios::binary);
            if (!stream) throw IoError("cannot open " + in.string());
            ra::LargeOptions lo{checked_budget(budget_text), temp_dir};
            auto result = ra::transform_large_rdf(stream, base_uri, output_dir_for(in, out_dir), lo, syntax);
            io.out << result.uri.str() << '\n';
            return 0;
        }
        if (fetch->parsed()) {
            TrustyUri uri;
            try {
                uri = extract_trusty_uri(input);
            } catch (const Error& e) {
                return report(io, CheckResult::error("-", e.what()), input);
            }
            remote::FetchPolicy policy;
            policy.max_redirects = max_redirects;
            policy.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
            std::optional<std::string> src;
            if (!source.empty()) src = source;
            return report(io, remote::fetch_and_check(uri, src, policy), input);
        }
        if (batch->parsed()) {
            std::ifstream in(input, std::ios::binary);
            if (!in) throw IoError("cannot open batch file " + input);
            std::stringstream text;
            text << in.rdbuf();
            return run_batch(text.str(), BatchOptions{jobs, timing}, io.out, io.err);
        }
        if (to_ni->parsed()) {
            std::optional<std::string> auth;
            if (!authority.empty()) auth = authority;
            io.out << to_ni_uri(extract_trusty_uri(input), auth, include_module).str() << '\n';
            return 0;
        }
        if (from_ni->parsed()) {
            auto res = from_ni_uri(NiUri::parse(input));
            io.out << res.hash_chars << '\t';
            for (std::size_t i = 0; i < res.candidate_modules.size(); ++i) {
                io.out << (i ? "," : "") << res.candidate_modules[i].str();
            }
            io.out << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        io.err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

struct BatchLine {
    std::string text;
    std::vector<std::string> args;
};

}  // namespace

const std::vector<std::string>& batch_verbs() {
    static const std::vector<std::string> verbs{"check",          "process-file",        "transform-rdf",
                                                "transform-large-rdf", "transform-nanopub", "check-large",
                                                "check-sorted",   "fetch-check"};
    return verbs;
}

std::string format_result(const CheckResult& result, std::string_view subject) {
    std::string out(status_name(result.status));
    out += '\t';
    out += result.expected.empty() ? "-" : result.expected;
    out += '\t';
    out += result.computed.value_or("-");
    out += '\t';
    out += subject;
    return out;
}

std::size_t parse_byte_size(std::string_view text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data()) throw std::invalid_argument("bad size: " + std::string(text));
    std::string_view unit(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr));
    std::size_t shift = 0;
    if (unit.empty() || unit == "B") {
        shift = 0;
    } else if (unit == "K" || unit == "KiB" || unit == "k") {
        shift = 10;
    } else if (unit == "M" || unit == "MiB") {
        shift = 20;
    } else if (unit == "G" || unit == "GiB") {
        shift = 30;
    } else {
        throw std::invalid_argument("bad size unit: " + std::string(unit));
    }
    if (shift > 0 && value > (SIZE_MAX >> shift)) throw std::invalid_argument("size overflow: " + std::string(text));
    return value << shift;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run_impl(args, Io{out, err});
}

int run_batch(std::string_view batch_text, const BatchOptions& options, std::ostream& out, std::ostream& err) {
    std::vector<BatchLine> lines;
    std::istringstream in{std::string(batch_text)};
    for (std::string raw; std::getline(in, raw);) {
        auto text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        lines.push_back({text, split_ws(text)});
    }

    struct Output {
        std::string out;
        std::string err;
        int rc = 0;
    };
    std::vector<Output> results(lines.size());

    auto execute = [&](std::size_t i) {
        const auto& line = lines[i];
        std::ostringstream o;
        std::ostringstream e;
        auto start = std::chrono::steady_clock::now();
        int rc;
        const auto& verbs = batch_verbs();
        if (std::find(verbs.begin(), verbs.end(), line.args.front()) == verbs.end()) {
            o << format_result(CheckResult::error("-", {}), line.text) << '\n';
            e << line.text << ": unknown batch verb '" << line.args.front() << "'\n";
            rc = 2;
        } else {
            rc = run(line.args, o, e);
        }
        if (options.timing) {
            std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
            o << "TIME\t" << std::fixed << std::setprecision(6) << secs.count() << '\t' << line.text << '\n';
        }
        results[i] = {o.str(), e.str(), rc};
    };

    if (options.jobs <= 1 || lines.size() <= 1) {
        for (std::size_t i = 0; i < lines.size(); ++i) {
            execute(i);
            out << results[i].out;
            err << results[i].err;
        }
    } else {
        std::atomic<std::size_t> next{0};
        {
            std::vector<std::jthread> workers;
            auto n = std::min<std::size_t>(options.jobs, lines.size());
            for (std::size_t w = 0; w < n; ++w) {
                workers.emplace_back([&] {
                    for (auto i = next++; i < lines.size(); i = next++) execute(i);
                });
            }
        }
        for (const auto& r : results) {
            out << r.out;
            err << r.err;
        }
    }

    int rc = 0;
    for (const auto& r : results) rc = worst(rc, r.rc);
    return rc;
}

}  // namespace trusty::cli
