#include "qflocal/corpus.hpp"

#include <fstream>
#include <sstream>

namespace qf {

namespace {

GramLattice lattice_from_json(const Json& j, int line) {
    auto ctx = [line](const std::string& msg) {
        return parse_error("line " + std::to_string(line) + ": " + msg);
    };
    if (!j.is_object()) throw ctx("corpus entry must be a JSON object");
    if (!j.contains("name") || !j["name"].is_string()) throw ctx("missing string field 'name'");
    std::string name = j["name"].get<std::string>();
    if (j.contains("diag")) {
        std::vector<Int> d;
        for (const auto& v : j["diag"]) {
            if (!v.is_number_integer()) throw ctx("'diag' must hold integers");
            d.push_back(v.get<Int>());
        }
        try {
            return diag_lattice(d, name);
        } catch (const input_error& e) {
            throw ctx(e.what());
        }
    }
    if (j.contains("gram")) {
        std::vector<std::vector<Int>> rows;
        for (const auto& r : j["gram"]) {
            std::vector<Int> row;
            for (const auto& v : r) {
                if (!v.is_number_integer()) throw ctx("'gram' must hold integers");
                row.push_back(v.get<Int>());
            }
            rows.push_back(std::move(row));
        }
        try {
            return make_lattice(rows, name);
        } catch (const input_error& e) {
            throw ctx(e.what());
        }
    }
    throw ctx("corpus entry needs 'gram' or 'diag'");
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::istream& in) {
    std::vector<CorpusEntry> out;
    std::string linebuf;
    int line = 0;
    std::vector<std::string> seen;
    while (std::getline(in, linebuf)) {
        ++line;
        std::string trimmed = linebuf;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        Json j = Json::parse(trimmed, nullptr, false);
        if (j.is_discarded())
            throw parse_error("line " + std::to_string(line) + ": invalid JSON");
        GramLattice L = lattice_from_json(j, line);
        for (const auto& n : seen)
            if (n == L.name())
                throw parse_error("line " + std::to_string(line) + ": duplicate name '" + L.name() + "'");
        seen.push_back(L.name());
        out.push_back(CorpusEntry{L.name(), L, line});
    }
    return out;
}

std::vector<CorpusEntry> load_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open corpus file: " + path);
    return parse_corpus(in);
}

bool looks_inline(const std::string& input) {
    return input.rfind("diag:", 0) == 0 || input.rfind("gram:", 0) == 0;
}

GramLattice parse_inline_lattice(const std::string& input) {
    if (input.rfind("diag:", 0) == 0) {
        std::vector<Int> d;
        std::stringstream ss(input.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                d.push_back(static_cast<Int>(std::stoll(tok)));
            } catch (...) {
                throw parse_error("bad diagonal literal: " + input);
            }
        }
        if (d.empty()) throw parse_error("empty diagonal literal");
        return diag_lattice(d, input);
    }
    if (input.rfind("gram:", 0) == 0) {
        Json j = Json::parse(input.substr(5), nullptr, false);
        if (j.is_discarded() || !j.is_array()) throw parse_error("bad gram literal: " + input);
        std::vector<std::vector<Int>> rows;
        for (const auto& r : j) {
            std::vector<Int> row;
            for (const auto& v : r) {
                if (!v.is_number_integer()) throw parse_error("gram literal must hold integers");
                row.push_back(v.get<Int>());
            }
            rows.push_back(std::move(row));
        }
        return make_lattice(rows, input);
    }
    throw parse_error("expected 'diag:...' or 'gram:[[...]]': " + input);
}

Json corpus_entry_json(const CorpusEntry& e) {
    Json j;
    j["name"] = e.name;
    j["gram"] = e.lattice.rows();
    return j;
}

std::vector<CorpusEntry> reference_corpus() {
    std::vector<CorpusEntry> out;
    auto add = [&](const std::string& name, const GramLattice& L) {
        out.push_back(CorpusEntry{name, L.named(name), static_cast<int>(out.size()) + 1});
    };
    add("sum3sq", diag_lattice({1, 1, 1}));
    add("sum4sq", diag_lattice({1, 1, 1, 1}));
    add("sum5sq", diag_lattice({1, 1, 1, 1, 1}));
    add("i1", diag_lattice({1, 1, 1, 2}));
    add("i2", diag_lattice({1, 1, 1, 8}));
    add("i3", diag_lattice({1, 1, 1, 32}));
    for (int k = 2; k <= 6; ++k) {
        Int f = 1;
        for (int t = 0; t < k; ++t) f *= 4;
        add("pow4k" + std::to_string(k), diag_lattice({1, 1, 1, f}));
    }
    add("a2", make_lattice({{2, 1}, {1, 2}}));
    add("h2", make_lattice({{2, 1}, {1, 4}}));
    add("t112", diag_lattice({1, 1, 2}));
    add("t113", diag_lattice({1, 1, 3}));
    add("t123", diag_lattice({1, 2, 3}));
    add("t117", diag_lattice({1, 1, 7}));
    add("t134", diag_lattice({1, 3, 4}));
    add("t1720", diag_lattice({1, 7, 20}));
    add("o3a", diag_lattice({1, 3, 18, 27}));
    add("o3b", diag_lattice({1, 2, 9, 27}));
    add("o5a", diag_lattice({1, 5, 25, 125}));
    add("o7a", diag_lattice({1, 7, 49, 343}));
    add("a2x164", ortho_sum(make_lattice({{2, 1}, {1, 2}}), diag_lattice({1, 64})));
    add("h2x34", ortho_sum(make_lattice({{2, 1}, {1, 4}}), diag_lattice({3, 4})));
    add("t117x49", ortho_sum(diag_lattice({1, 1, 7}), diag_lattice({49})));

    // Deterministic seeded fill: small rank-4/5 lattices with bounded
    // ramification, some with a unimodular change of basis.
    Rng rng(20240915);
    auto bounded = [&](int rank) {
        for (;;) {
            std::vector<Int> d(rank);
            for (Int& v : d) {
                v = rng.range(1, 9);
                switch (rng.below(6)) {
                    case 0: v *= (rng.coin() ? 2 : 4); break;
                    case 1: v *= 3; break;
                    case 2: v *= (rng.coin() ? 5 : 7); break;
                    default: break;
                }
            }
            GramLattice D = diag_lattice(d);
            if (vp(D.det(), 2) <= 6 && vp(D.det(), 3) <= 4 && vp(D.det(), 5) <= 3 &&
                vp(D.det(), 7) <= 2)
                return D;
        }
    };
    char buf[16];
    for (int i = 0; i < 32; ++i) {
        std::snprintf(buf, sizeof buf, "rnd4-%02d", i);
        GramLattice D = bounded(4);
        add(buf, i % 4 == 3 ? random_unimodular_congruence(rng, D, 2) : D);
    }
    for (int i = 0; i < 8; ++i) {
        std::snprintf(buf, sizeof buf, "rnd5-%02d", i);
        GramLattice D = bounded(5);
        add(buf, i % 4 == 3 ? random_unimodular_congruence(rng, D, 2) : D);
    }
    return out;
}

// --- reports ---------------------------------------------------------------

Json profile_json(const LocalProfile& pr) {
    Json eta = Json::object();
    for (const auto& [s, ev] : pr.table) {
        if (ev.infinite)
            eta[s.str()] = "inf";
        else
            eta[s.str()] = to_int(ev.cls.value());
    }
    Json j;
    j["eta"] = std::move(eta);
    if (pr.nu_infinite)
        j["nu"] = "inf";
    else
        j["nu"] = pr.nu;
    j["nu_prime"] = pr.nu_prime;
    j["type_a"] = pr.type_a;
    return j;
}

Json jordan_json(const JordanSplitting& J) {
    Json levels = Json::array();
    for (const auto& lv : J.levels) {
        Json level;
        level["exp"] = lv.exp;
        Json blocks = Json::array();
        for (const auto& b : lv.blocks) blocks.push_back(b.str());
        level["blocks"] = std::move(blocks);
        levels.push_back(std::move(level));
    }
    return levels;
}

Json report_json(const ScanReport& rep) {
    Json j;
    j["name"] = rep.name;
    j["kind"] = rep.kind;
    Json params = Json::object();
    for (const auto& [k, v] : rep.params) params[k] = v;
    j["params"] = std::move(params);
    j["verdict"] = rep.verdict;
    Json w = Json::array();
    for (const BigInt& v : rep.witness_ints) w.push_back(to_int(v));
    if (rep.witness_gram) {
        Json g;
        g["gram"] = *rep.witness_gram;
        w.push_back(std::move(g));
    }
    j["witnesses"] = std::move(w);
    j["profiles"] = Json::object();
    j["jordan"] = Json::object();
    return j;
}

Json analyze_json(const GramLattice& L, const std::vector<Int>& primes, int vcap) {
    Json j;
    j["name"] = L.name();
    j["kind"] = "analyze";
    Json params = Json::object();
    params["vcap"] = vcap;
    j["params"] = std::move(params);
    j["verdict"] = "pass";
    j["witnesses"] = Json::array();

    std::vector<Int> ps = primes;
    if (ps.empty()) ps = prime_factors(BigInt(2) * L.det());

    Json profiles = Json::object(), jordan = Json::object(), classes = Json::object();
    for (Int p : ps) {
        JordanSplitting J = jordan_decompose(L, p);
        jordan[std::to_string(p)] = jordan_json(J);
        if (L.rank() >= 3) profiles[std::to_string(p)] = profile_json(nu_profile(L, p));
        if (vcap >= 0) {
            Json cl = Json::array();
            for (const SquareClass& c : local_classes(LocalEngine(J), vcap).classes)
                cl.push_back(std::to_string(c.val) + ":" + std::to_string(c.unit.rep));
            classes[std::to_string(p)] = std::move(cl);
        }
    }
    j["profiles"] = std::move(profiles);
    j["jordan"] = std::move(jordan);
    if (vcap >= 0) j["classes"] = std::move(classes);

    Json lat;
    lat["rank"] = L.rank();
    lat["dl"] = to_int(L.det());
    lat["scale"] = L.scale();
    lat["norm"] = L.norm();
    j["lattice"] = std::move(lat);

    if (L.rank() >= 4) {
        EscalationData esc = escalation_data(L);
        Json e;
        e["primes"] = esc.primes;
        e["E"] = esc.e_set;
        Json xi = Json::object();
        for (const auto& [p, c] : esc.xi) xi[std::to_string(p)] = to_int(c.value());
        e["xi"] = std::move(xi);
        Json recs = Json::array();
        for (const auto& r : esc.records) {
            Json rec;
            Json etaj = Json::array(), etapj = Json::array();
            for (const auto& c : r.eta) etaj.push_back(to_int(c.value()));
            for (const auto& c : r.eta_prime) etapj.push_back(to_int(c.value()));
            rec["eta"] = std::move(etaj);
            rec["E_eta"] = r.e_eta;
            Json kap = Json::object();
            for (const auto& [p, k] : r.kappa) kap[std::to_string(p)] = k;
            rec["kappa"] = std::move(kap);
            rec["m"] = to_int(r.m);
            rec["eta_prime"] = std::move(etapj);
            recs.push_back(std::move(rec));
        }
        e["etas"] = std::move(recs);
        j["escalation"] = std::move(e);
    }
    return j;
}

bool validate_report_json(const Json& j, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!j.is_object()) return fail("report is not an object");
    for (const char* key : {"name", "kind", "params", "verdict", "witnesses", "profiles", "jordan"})
        if (!j.contains(key)) return fail(std::string("missing key ") + key);
    if (!j["name"].is_string() || !j["kind"].is_string() || !j["verdict"].is_string())
        return fail("name/kind/verdict must be strings");
    if (!j["params"].is_object()) return fail("params must be an object");
    if (!j["witnesses"].is_array()) return fail("witnesses must be an array");
    for (const auto& w : j["witnesses"])
        if (!w.is_number_integer() && !(w.is_object() && w.contains("gram")))
            return fail("witness entries must be integers or {gram: ...}");
    if (!j["profiles"].is_object() || !j["jordan"].is_object())
        return fail("profiles/jordan must be objects");
    for (const auto& [p, pj] : j["profiles"].items()) {
        (void)p;
        for (const char* key : {"eta", "nu", "nu_prime", "type_a"})
            if (!pj.contains(key)) return fail("profile missing key");
        if (!pj["eta"].is_object()) return fail("profile eta must be an object");
        if (!(pj["nu"].is_number_integer() || pj["nu"] == Json("inf")))
            return fail("profile nu must be an integer or \"inf\"");
    }
    for (const auto& [p, lv] : j["jordan"].items()) {
        (void)p;
        if (!lv.is_array()) return fail("jordan entry must be an array");
        for (const auto& level : lv)
            if (!level.contains("exp") || !level.contains("blocks"))
                return fail("jordan level missing exp/blocks");
    }
    return true;
}

std::string render_report_text(const Json& j) {
    std::ostringstream os;
    os << j.value("name", "?") << ": " << j.value("kind", "?") << " -> "
       << j.value("verdict", "?");
    if (j.contains("witnesses") && !j["witnesses"].empty()) {
        os << "  witnesses:";
        for (const auto& w : j["witnesses"]) {
            if (w.is_number_integer())
                os << " " << w.get<long long>();
            else
                os << " " << w.dump();
        }
    }
    if (j.contains("lattice"))
        os << "  [rank " << j["lattice"]["rank"].get<int>() << ", dL "
           << j["lattice"]["dl"].get<long long>() << "]";
    if (j.contains("profiles"))
        for (const auto& [p, pj] : j["profiles"].items()) {
            os << "\n  p=" << p << ": nu=" << pj["nu"].dump() << " nu'=" << pj["nu_prime"].dump()
               << (pj["type_a"].get<bool>() ? " typeA" : "");
        }
    return os.str();
}

}  // namespace qf
