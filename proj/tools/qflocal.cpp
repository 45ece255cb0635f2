// qflocal: batch analysis of integral lattices and their local invariants.
//
// Subcommands:
//   analyze <corpus|literal>   per-lattice invariants as JSON Lines
//   scan regular|new|structure <corpus|literal> [--bound B] [--pmax q]
//   verify-lemmas [--suite name|all] [--seed s] [--cases n]
//
// Exit codes: 0 all pass/candidate, 1 witness/not-new/suite failure,
// 2 usage or input error.

#include <iostream>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>

#include "qflocal/corpus.hpp"

namespace {

using namespace qf;

struct Options {
    std::string input;
    std::string format = "json";
    std::vector<Int> primes;
    int vcap = -1;
    Int bound = 2000;
    Int pmax = 5;
    int jobs = 1;
    std::string kind;
    std::string suite = "all";
    long long seed = 1;
    Int cases = 100;
};

std::vector<CorpusEntry> load_entries(const std::string& input) {
    if (looks_inline(input)) {
        GramLattice L = parse_inline_lattice(input);
        return {CorpusEntry{L.name(), L, 1}};
    }
    return load_corpus_file(input);
}

void emit(const Json& j, const std::string& format) {
    if (format == "text")
        std::cout << render_report_text(j) << "\n";
    else
        std::cout << j.dump() << "\n";
}

Json error_json(const std::string& name, const std::string& kind, const std::string& what) {
    Json j;
    j["name"] = name;
    j["kind"] = kind;
    j["params"] = Json::object();
    j["verdict"] = "error";
    j["witnesses"] = Json::array();
    j["profiles"] = Json::object();
    j["jordan"] = Json::object();
    j["error"] = what;
    return j;
}

// Fan out per-entry work, then emit in corpus order; exit status is the
// worst outcome seen.
int run_over_corpus(const Options& opt,
                    const std::function<Json(const CorpusEntry&)>& fn) {
    std::vector<CorpusEntry> entries = load_entries(opt.input);
    std::vector<Json> results(entries.size());
    std::vector<int> status(entries.size(), 0);
    parallel_for(entries.size(), opt.jobs, [&](std::size_t i) {
        try {
            results[i] = fn(entries[i]);
            const std::string v = results[i].value("verdict", "pass");
            status[i] = (v == "witness" || v == "not-new") ? 1 : 0;
        } catch (const std::exception& e) {
            results[i] = error_json(entries[i].name, opt.kind, e.what());
            status[i] = 2;
        }
    });
    int worst = 0;
    std::map<std::string, int> counts;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        emit(results[i], opt.format);
        counts[results[i].value("verdict", "?")]++;
        worst = std::max(worst, status[i]);
    }
    Json summary;
    summary["summary"] = counts;
    summary["total"] = entries.size();
    emit(summary, opt.format == "text" ? "json" : opt.format);
    return worst;
}

int cmd_analyze(const Options& opt) {
    return run_over_corpus(opt, [&](const CorpusEntry& e) {
        return analyze_json(e.lattice, opt.primes, opt.vcap);
    });
}

int cmd_scan(const Options& opt) {
    return run_over_corpus(opt, [&](const CorpusEntry& e) {
        ScanReport rep;
        if (opt.kind == "regular")
            rep = regularity_scan(e.lattice, opt.bound);
        else if (opt.kind == "new")
            rep = newness_scan(e.lattice, opt.bound, opt.pmax);
        else
            rep = q_structure_check(e.lattice, opt.bound);
        return report_json(rep);
    });
}

int cmd_verify(const Options& opt) {
    std::vector<std::string> suites;
    if (opt.suite == "all")
        suites = lemma_suite_names();
    else
        suites = {opt.suite};
    for (const auto& s : suites) {
        bool known = false;
        for (const auto& n : lemma_suite_names()) known = known || n == s;
        if (!known) {
            std::cerr << "unknown suite: " << s << "\n";
            return 2;
        }
    }
    int worst = 0;
    for (const auto& s : suites) {
        ScanReport rep = run_lemma_suite(s, static_cast<u64>(opt.seed), opt.cases);
        emit(report_json(rep), opt.format);
        if (rep.verdict != "pass") worst = std::max(worst, 1);
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local invariants and desk-scale scans for integral quadratic lattices"};
    app.require_subcommand(1);
    Options opt;

    auto* analyze = app.add_subcommand("analyze", "per-lattice local analysis");
    analyze->add_option("input", opt.input, "corpus file or diag:/gram: literal")->required();
    analyze->add_option("--primes", opt.primes, "primes to analyze (default: p | 2 dL)");
    analyze->add_option("--vcap", opt.vcap, "also list represented classes up to this valuation");
    analyze->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--jobs", opt.jobs);

    auto* scan = app.add_subcommand("scan", "regularity / newness / structure scans");
    scan->add_option("kind", opt.kind, "regular|new|structure")
        ->required()
        ->check(CLI::IsMember({"regular", "new", "structure"}));
    scan->add_option("input", opt.input, "corpus file or diag:/gram: literal")->required();
    scan->add_option("--bound", opt.bound, "value bound B");
    scan->add_option("--pmax", opt.pmax, "largest sublattice index prime (new scans)");
    scan->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
    scan->add_option("--jobs", opt.jobs);

    auto* verify = app.add_subcommand("verify-lemmas", "seeded executable lemma suites");
    verify->add_option("--suite", opt.suite, "suite name or 'all'");
    verify->add_option("--seed", opt.seed);
    verify->add_option("--cases", opt.cases);
    verify->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(opt);
        if (app.got_subcommand(scan)) return cmd_scan(opt);
        return cmd_verify(opt);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
