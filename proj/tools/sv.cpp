/*
   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "ssv/eval.hpp"
#include "ssv/flatten.hpp"
#include "ssv/forms.hpp"
#include "ssv/schur.hpp"
#include "ssv/secant.hpp"
#include "ssv/symgroup.hpp"

using nlohmann::ordered_json;
using namespace ssv;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

// exit codes: 0 ok, 1 manifest mismatch, 2 usage, 3 budget, 4 internal
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

struct RunConfig {
    uint64_t seed = 20240915;
    int threads = 1;
    std::optional<double> budget_sec;
    std::string json_path; // empty = stdout text
    std::string csv_path;
    bool json_stdout = false;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

std::vector<uint64_t> run_primes(int n = 2) { return default_primes(n); }

void stamp(ordered_json& j, const RunConfig& cfg, Clock::time_point start) {
    j["seed"] = cfg.seed;
    j["primes"] = run_primes();
    j["version"] = kVersion;
    j["schema_version"] = kSchemaVersion;
    j["elapsed_ms"] = elapsed_ms(start);
}

void emit(const ordered_json& j, const RunConfig& cfg) {
    // 2-space indent, canonical (insertion) key order
    std::string text = j.dump(2);
    if (!cfg.json_path.empty()) {
        std::ofstream out(cfg.json_path);
        out << text << "\n";
        std::cerr << "wrote " << cfg.json_path << "\n";
    } else {
        std::cout << text << "\n";
    }
}

std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw CLI::ValidationError("empty dimension list");
    return out;
}

Partition parse_partition(const ordered_json& j) {
    std::vector<int> parts;
    for (const auto& v : j) parts.push_back(v.get<int>());
    return Partition(parts);
}

// ---------------------------------------------------------------- tensors

void flatten_json_array(const ordered_json& node, QVec& out) {
    if (node.is_array()) {
        for (const auto& c : node) flatten_json_array(c, out);
        return;
    }
    if (node.is_string()) {
        out.emplace_back(node.get<std::string>());
        out.back().canonicalize();
    } else if (node.is_number_integer()) {
        out.emplace_back(static_cast<long>(node.get<long long>()));
    } else {
        throw std::invalid_argument("tensor entries must be integers or "
                                    "rational strings like \"2/3\"");
    }
}

QTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tensor file: " + path);
    ordered_json j = ordered_json::parse(in);
    QTensor t;
    for (const auto& v : j.at("dims")) t.dims.push_back(v.get<int>());
    flatten_json_array(j.at("coords"), t.coords);
    std::size_t expect = 1;
    for (int d : t.dims) expect *= static_cast<std::size_t>(d);
    if (t.coords.size() != expect)
        throw std::invalid_argument("tensor coordinate count does not match "
                                    "dims");
    return t;
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

ordered_json qvec_json(const QVec& v) {
    ordered_json a = ordered_json::array();
    for (const auto& q : v) a.push_back(q_str(q));
    return a;
}

ordered_json qvecs_json(const std::vector<QVec>& vs) {
    ordered_json a = ordered_json::array();
    for (const auto& v : vs) a.push_back(qvec_json(v));
    return a;
}

// ------------------------------------------------------------------ forms

ordered_json form_json(const MinorProductForm& form) {
    ordered_json j;
    j["degree"] = form.degree;
    j["dims"] = form.dims;
    ordered_json parts = ordered_json::array();
    for (const auto& p : form.partitions) parts.push_back(p.str());
    j["partitions"] = parts;
    ordered_json factors = ordered_json::array();
    for (const auto& factor : form.factors) {
        ordered_json groups = ordered_json::array();
        for (const auto& g : factor) groups.push_back(g.slots);
        factors.push_back(groups);
    }
    j["factors"] = factors; // slot indices are 0-based
    return j;
}

MinorProductForm load_form_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open form file: " + path);
    ordered_json j = ordered_json::parse(in);
    MinorProductForm form;
    form.degree = j.at("degree").get<int>();
    for (const auto& v : j.at("dims")) form.dims.push_back(v.get<int>());
    for (const auto& p : j.at("partitions"))
        form.partitions.push_back(parse_partition(p));
    for (const auto& factor : j.at("factors")) {
        std::vector<MinorGroup> fg;
        for (const auto& g : factor) {
            MinorGroup mg;
            for (const auto& s : g) mg.slots.push_back(s.get<int>());
            fg.push_back(std::move(mg));
        }
        form.factors.push_back(std::move(fg));
    }
    form.validate();
    return form;
}

// "name", "name:2", or a path to a JSON form file
MinorProductForm resolve_form(const std::string& spec) {
    if (spec.find(".json") != std::string::npos) return load_form_file(spec);
    std::string name = spec;
    int index = 0;
    if (auto pos = spec.rfind(':'); pos != std::string::npos) {
        name = spec.substr(0, pos);
        index = std::stoi(spec.substr(pos + 1));
    }
    const CatalogEntry& e = catalog_lookup(name);
    if (index < 0 || index >= static_cast<int>(e.forms.size()))
        throw std::out_of_range("form index out of range for " + name);
    return e.forms[index];
}

// ------------------------------------------------------------------- scan

ordered_json verdict_json(const LabelVerdict& v) {
    ordered_json j;
    j["label"] = v.label.str();
    j["multiplicity_in_Sd"] = v.label.multiplicity_in_Sd;
    j["status"] = v.status;
    j["multiplicity_in_ideal"] = v.multiplicity_in_ideal;
    j["forms_realized"] = v.forms_realized;
    j["primes"] = v.primes;
    j["point_sets"] = v.point_sets;
    j["patterns_tested"] = v.patterns_tested;
    ordered_json coeffs = ordered_json::array();
    for (const auto& row : v.coefficients) coeffs.push_back(row);
    j["coefficients"] = coeffs;
    return j;
}

ordered_json report_json(const ScanReport& rep) {
    ordered_json j;
    j["degree"] = rep.degree;
    j["dims"] = rep.spec.dims;
    j["r"] = rep.spec.r;
    ordered_json entries = ordered_json::array();
    for (const auto& v : rep.entries) entries.push_back(verdict_json(v));
    j["entries"] = entries;
    j["ideal_dimension"] = rep.ideal_dimension();
    return j;
}

void report_csv(const ScanReport& rep, const std::string& path) {
    std::ofstream out(path);
    out << "label,status,multiplicity_in_Sd,multiplicity_in_ideal,"
           "forms_realized,point_sets,patterns_tested\n";
    for (const auto& v : rep.entries)
        out << v.label.str() << ',' << v.status << ','
            << v.label.multiplicity_in_Sd << ',' << v.multiplicity_in_ideal
            << ',' << v.forms_realized << ',' << v.point_sets << ','
            << v.patterns_tested << "\n";
    std::cerr << "wrote " << path << "\n";
}

// Label loop with a wall-clock budget; matches scan_ideal verdict for
// verdict because per-label seeds depend only on (seed, salt, label).
ScanReport scan_with_budget(int d, const SecantSpec& spec,
                            const ScanOptions& opts,
                            std::optional<double> budget_sec,
                            Clock::time_point start, bool& exceeded) {
    exceeded = false;
    std::vector<ModuleLabel> labels = decompose_symmetric_power(d, spec.dims);
    if (d >= 7)
        std::stable_sort(labels.begin(), labels.end(),
                         [](const ModuleLabel& a, const ModuleLabel& b) {
                             return a.multiplicity_in_Sd <
                                    b.multiplicity_in_Sd;
                         });
    ScanReport rep;
    rep.degree = d;
    rep.spec = spec;
    for (const ModuleLabel& label : labels) {
        if (!opts.label_filter.empty()) {
            bool keep = false;
            for (const auto& want : opts.label_filter)
                if (want == label.str()) keep = true;
            if (!keep) continue;
        }
        if (budget_sec && elapsed_ms(start) > *budget_sec * 1000.0) {
            exceeded = true;
            break;
        }
        rep.entries.push_back(test_label(label, d, spec, opts));
    }
    return rep;
}

// -------------------------------------------------------------- reproduce

// Reference values for the reproduce cases, transcribed once and kept
// separate from anything this binary computes.
const ordered_json& reference_manifest() {
    static const ordered_json m = ordered_json::parse(R"({
      "schema_version": 1,
      "cases": {
        "6.2": {
          "dims": [2, 2, 2],
          "degree3_ideal_dimension": 0,
          "terracini": {"r": 2, "dim": 8, "fills": true}
        },
        "6.3": {
          "variants": [
            {"dims": [2, 2, 3], "cubics_from_flattenings": true,
             "terracini": {"r": 3, "dim": 12, "fills": true}},
            {"dims": [2, 2, 4], "cubics_from_flattenings": true,
             "terracini": {"r": 3, "dim": 15, "fills": false}}
          ]
        },
        "6.4": {
          "dims": [2, 3, 3],
          "cubics_from_flattenings": true,
          "terracini": {"r": 3, "dim": 18, "fills": true}
        },
        "6.5": {
          "dims": [3, 3, 3],
          "degree4_r3": {"ideal_dimension": 27, "labels": ["211|211|211"]},
          "degree9_r4_label": {"label": "333|333|333", "in_ideal": 1},
          "degree6_r4_label": {"label": "222|222|222", "in_ideal": 0},
          "terracini": {"r": 4, "dim": 26, "fills": false}
        },
        "6.6": {
          "dims": [2, 3, 4],
          "degree4_r3": {"ideal_dimension": 15,
                         "labels": ["31|211|1111", "22|22|1111"]},
          "terracini": {"r": 4, "dim": 24, "fills": true}
        },
        "6.7": {
          "dims": [3, 3, 4],
          "degree4_r3": {"ideal_dimension": 261},
          "degree5_r4": {"ideal_dimension": 0},
          "degree6_r4_labels": [
            {"label": "321|321|3111", "in_ideal": 0},
            {"label": "222|222|3111", "in_ideal": 1}
          ],
          "terracini": {"r": 5, "dim": 36, "fills": true}
        },
        "6.8-deg5": {
          "dims": [4, 4, 4],
          "degree5_r4": {"ideal_dimension": 1728,
                         "labels": ["311|2111|2111", "2111|311|2111",
                                    "2111|2111|311"]}
        },
        "6.8-deg8": {
          "dims": [4, 4, 4],
          "degree8_r5_labels": [
            {"label": "5111|2222|2222", "in_ideal": 1, "form": "deg8-5111-2222"},
            {"label": "3311|2222|2222", "in_ideal": 1, "form": "deg8-3311-2222"}
          ],
          "triangle_free": true
        },
        "6.8-deg12": {
          "dims": [4, 4, 4],
          "degree12_r6": {"form": "deg12-3333", "in_ideal": false}
        }
      }
    })");
    return m;
}

struct CheckList {
    ordered_json checks = ordered_json::array();
    bool ok = true;

    template <class T, class U>
    void expect(const std::string& name, const T& expected, const U& actual) {
        ordered_json c;
        c["check"] = name;
        c["expected"] = expected;
        c["actual"] = actual;
        bool match = (c["expected"] == c["actual"]);
        c["match"] = match;
        ok = ok && match;
        checks.push_back(std::move(c));
        std::cerr << (match ? "  ok   " : "  FAIL ") << name << "\n";
    }
};

ModuleLabel find_label(int d, const std::vector<int>& dims,
                       const std::string& str) {
    for (const ModuleLabel& l : decompose_symmetric_power(d, dims))
        if (l.str() == str) return l;
    throw std::invalid_argument("label not present in decomposition: " + str);
}

std::vector<std::string> in_ideal_labels(const ScanReport& rep) {
    std::vector<std::string> out;
    for (const auto& v : rep.entries)
        if (v.multiplicity_in_ideal > 0) out.push_back(v.label.str());
    return out;
}

void check_terracini(CheckList& cl, const ordered_json& want,
                     const std::vector<int>& dims, uint64_t seed) {
    PrimeField f(run_primes(1)[0]);
    SecantSpec spec{dims, want.at("r").get<int>(), seed};
    std::size_t dim = terracini_dimension(spec, f);
    std::size_t ambient = 1;
    for (int d : dims) ambient *= static_cast<std::size_t>(d);
    cl.expect("terracini_dimension", want.at("dim").get<std::size_t>(), dim);
    cl.expect("terracini_fills", want.at("fills").get<bool>(),
              dim == ambient);
}

void check_cubics_flattenings(CheckList& cl, const std::vector<int>& dims,
                              uint64_t seed) {
    long long cubic = cubic_ideal_dimension(dims);
    std::size_t minors = minor_span_dimension(dims, 2);
    SecantSpec spec{dims, 2, seed};
    ScanReport rep = scan_ideal(3, spec);
    cl.expect("degree3_dim_equals_cubic_count", cubic,
              rep.ideal_dimension());
    cl.expect("minor_span_equals_cubic_count", cubic,
              static_cast<long long>(minors));
    cl.expect("cubics_nonzero", true, cubic > 0);
}

void check_label(CheckList& cl, const ordered_json& want, int d,
                 const std::vector<int>& dims, int r, uint64_t seed) {
    ModuleLabel label = find_label(d, dims, want.at("label").get<std::string>());
    SecantSpec spec{dims, r, seed};
    LabelVerdict v = test_label(label, d, spec);
    cl.expect("label_" + label.str() + "_in_ideal",
              want.at("in_ideal").get<long long>(), v.multiplicity_in_ideal);
    long long oracle = kernel_oracle(label, d, spec);
    cl.expect("label_" + label.str() + "_oracle_agrees", v.multiplicity_in_ideal,
              oracle);
}

int cmd_reproduce(const std::string& case_id, const RunConfig& cfg) {
    Clock::time_point start = Clock::now();
    const ordered_json& manifest = reference_manifest();
    if (!manifest.at("cases").contains(case_id))
        throw CLI::ValidationError("unknown case id: " + case_id);
    const ordered_json& want = manifest.at("cases").at(case_id);
    std::cerr << "case " << case_id << "\n";

    CheckList cl;
    uint64_t seed = cfg.seed;

    if (case_id == "6.2") {
        std::vector<int> dims = want.at("dims").get<std::vector<int>>();
        SecantSpec spec{dims, 2, seed};
        ScanReport rep = scan_ideal(3, spec);
        cl.expect("degree3_ideal_dimension",
                  want.at("degree3_ideal_dimension").get<long long>(),
                  rep.ideal_dimension());
        check_terracini(cl, want.at("terracini"), dims, seed);
    } else if (case_id == "6.3") {
        for (const auto& variant : want.at("variants")) {
            std::vector<int> dims = variant.at("dims").get<std::vector<int>>();
            check_cubics_flattenings(cl, dims, seed);
            check_terracini(cl, variant.at("terracini"), dims, seed);
        }
    } else if (case_id == "6.4") {
        std::vector<int> dims = want.at("dims").get<std::vector<int>>();
        check_cubics_flattenings(cl, dims, seed);
        check_terracini(cl, want.at("terracini"), dims, seed);
    } else if (case_id == "6.5") {
        std::vector<int> dims = want.at("dims").get<std::vector<int>>();
        SecantSpec spec3{dims, 3, seed};
        ScanReport rep = scan_ideal(4, spec3);
        cl.expect("degree4_r3_ideal_dimension",
                  want.at("degree4_r3").at("ideal_dimension").get<long long>(),
                  rep.ideal_dimension());
        cl.expect("degree4_r3_labels",
                  want.at("degree4_r3").at("labels"),
                  in_ideal_labels(rep));
        check_label(cl, want.at("degree9_r4_label"), 9, dims, 4, seed);
        check_label(cl, want.at("degree6_r4_label"), 6, dims, 4, seed);
        check_terracini(cl, want.at("terracini"), dims, seed);
    } else if (case_id == "6.6") {
        std::vector<int> dims = want.at("dims").get<std::vector<int>>();
        SecantSpec spec{dims, 3, seed};
        ScanReport rep = scan_ideal(4, spec);
        cl.expect("degree4_r3_ideal_dimension",
                  want.at("degree4_r3").at("ideal_dimension").get<long long>(),
                  rep.ideal_dimension());
        cl.expect("degree4_r3_labels", want.at("degree4_r3").at("labels"),
                  in_ideal_labels(rep));
        check_terracini(cl, want.at("terracini"), dims, seed);
    } else if (case_id == "6.7") {
        std::vector<int> dims = want.at("dims").get<std::vector<int>>();
        ScanReport rep4 = scan_ideal(4, SecantSpec{dims, 3, seed});
        cl.expect("degree4_r3_ideal_dimension",
                  want.at("degree4_r3").at("ideal_dimension").get<long long>(),
                  rep4.ideal_dimension());
        ScanReport rep5 = scan_ideal(5, SecantSpec{dims, 4, seed});
        cl.expect("degree5_r4_ideal_dimension",
                  want.at("degree5_r4").at("ideal_dimension").get<long long>(),
                  rep5.ideal_dimension());
        for (const auto& lw : want.at("degree6_r4_labels"))
            check_label(cl, lw, 6, dims, 4, seed);
        check_terracini(cl, want.at("terracini"), dims, seed);
    } else if (case_id == "6.8-deg5") {
        std::vector<int> dims = want.at("dims").get<std::vector<int>>();
        ScanReport rep = scan_ideal(5, SecantSpec{dims, 4, seed});
        cl.expect("degree5_r4_ideal_dimension",
                  want.at("degree5_r4").at("ideal_dimension").get<long long>(),
                  rep.ideal_dimension());
        std::vector<std::string> got = in_ideal_labels(rep);
        std::sort(got.begin(), got.end());
        std::vector<std::string> exp =
            want.at("degree5_r4").at("labels").get<std::vector<std::string>>();
        std::sort(exp.begin(), exp.end());
        cl.expect("degree5_r4_labels", exp, got);
    } else if (case_id == "6.8-deg8") {
        std::vector<int> dims = want.at("dims").get<std::vector<int>>();
        for (const auto& lw : want.at("degree8_r5_labels")) {
            check_label(cl, lw, 8, dims, 5, seed);
            const CatalogEntry& e =
                catalog_lookup(lw.at("form").get<std::string>());
            cl.expect("triangle_free_" + e.name,
                      want.at("triangle_free").get<bool>(),
                      triangle_free(slot_graph(e.forms[0])));
        }
    } else if (case_id == "6.8-deg12") {
        std::vector<int> dims = want.at("dims").get<std::vector<int>>();
        const CatalogEntry& e = catalog_lookup(
            want.at("degree12_r6").at("form").get<std::string>());
        PrimeField f(run_primes(1)[0]);
        SecantSpec spec{dims, 6, seed};
        auto points = sample_secant_point(spec, f);
        uint64_t value = eval_at_sum(e.forms[0], points, f);
        cl.expect("degree12_r6_in_ideal",
                  want.at("degree12_r6").at("in_ideal").get<bool>(),
                  value == 0);
    }

    ordered_json out;
    out["command"] = "reproduce";
    out["case"] = case_id;
    out["checks"] = cl.checks;
    out["match"] = cl.ok;
    stamp(out, cfg, start);
    emit(out, cfg);
    return cl.ok ? 0 : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"secant variety equation toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("SV_THREADS")) cfg.threads = std::atoi(env);
    app.add_option("--seed", cfg.seed, "base RNG seed");
    app.add_option("--threads", cfg.threads, "worker thread count");
    app.add_option("--budget-sec", cfg.budget_sec, "wall clock budget");
    app.add_option("--json", cfg.json_path, "write JSON report to file")
        ->expected(0, 1);

    // chars
    int chars_d = 3;
    auto* chars = app.add_subcommand("chars", "symmetric group characters");
    chars->add_option("--d", chars_d, "degree")->required();

    // decompose
    int dec_d = 3;
    std::string dec_dims;
    auto* dec = app.add_subcommand("decompose", "decompose S^d(A_1 x ... x A_k)");
    dec->add_option("--d", dec_d)->required();
    dec->add_option("--dims", dec_dims)->required();

    // cubics
    std::string cub_dims;
    auto* cub = app.add_subcommand("cubics", "degree-3 ideal of sigma_2");
    cub->add_option("--dims", cub_dims)->required();

    // scan
    int scan_d = 4, scan_r = 2, scan_point_sets = 3;
    std::string scan_dims, scan_labels;
    bool scan_wb = false;
    uint64_t scan_salt = 0;
    auto* scan = app.add_subcommand("scan", "ideal membership scan");
    scan->add_option("--d", scan_d)->required();
    scan->add_option("--dims", scan_dims)->required();
    scan->add_option("--r", scan_r)->required();
    scan->add_option("--labels", scan_labels, "comma list of label strings");
    scan->add_option("--point-sets", scan_point_sets);
    scan->add_option("--salt", scan_salt);
    scan->add_flag("--weight-basis", scan_wb);
    std::string scan_csv;
    scan->add_option("--csv", scan_csv, "write CSV report to file");

    // terracini
    std::string ter_dims;
    int ter_r = 2;
    auto* ter = app.add_subcommand("terracini", "secant cone dimension");
    ter->add_option("--dims", ter_dims)->required();
    ter->add_option("--r", ter_r)->required();

    // gss
    std::string gss_path;
    auto* gss = app.add_subcommand("gss", "sigma_2 membership certificate");
    gss->add_option("--tensor", gss_path)->required();

    // flatten-rank
    std::string fr_path, fr_split;
    auto* fr = app.add_subcommand("flatten-rank", "exact flattening rank");
    fr->add_option("--tensor", fr_path)->required();
    fr->add_option("--split", fr_split, "1-based row-side factors")->required();

    // eval
    std::string ev_form, ev_pattern;
    int ev_r = 2;
    auto* ev = app.add_subcommand("eval", "evaluate a symmetrized form");
    ev->add_option("--form", ev_form, "catalog name[:index] or JSON file")
        ->required();
    ev->add_option("--r", ev_r)->required();
    ev->add_option("--pattern", ev_pattern, "per-point multiplicities");

    // catalog
    bool cat_list = false;
    std::string cat_name;
    auto* cat = app.add_subcommand("catalog", "named form catalog");
    cat->add_flag("--list", cat_list);
    cat->add_option("--name", cat_name);

    // reproduce
    std::string rep_case;
    auto* rep = app.add_subcommand("reproduce", "check a reference case");
    rep->add_option("case", rep_case, "case id, e.g. 6.5")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
    if (app.count("--json") && cfg.json_path.empty()) cfg.json_stdout = true;

    Clock::time_point start = Clock::now();
    try {
        if (*chars) {
            auto classes = conjugacy_classes(chars_d);
            auto parts = enumerate_partitions(chars_d);
            ordered_json out;
            out["command"] = "chars";
            out["d"] = chars_d;
            ordered_json cj = ordered_json::array();
            for (const auto& c : classes)
                cj.push_back({{"cycle_type", c.cycle_lengths.str()},
                              {"class_size", c.class_size}});
            out["classes"] = cj;
            ordered_json rows = ordered_json::array();
            for (const auto& pi : parts) {
                ordered_json row;
                row["partition"] = pi.str();
                row["dimension"] = irrep_dimension(pi);
                std::vector<long long> vals;
                for (const auto& c : classes)
                    vals.push_back(character(pi, c.cycle_lengths));
                row["values"] = vals;
                rows.push_back(row);
            }
            out["table"] = rows;
            stamp(out, cfg, start);
            emit(out, cfg);
            if (cfg.json_path.empty() && !cfg.json_stdout) {
                // text table to stderr for quick reading
                for (const auto& pi : parts) {
                    std::cerr << pi.str() << ":";
                    for (const auto& c : classes)
                        std::cerr << " " << character(pi, c.cycle_lengths);
                    std::cerr << "\n";
                }
            }
        } else if (*dec) {
            std::vector<int> dims = parse_dims(dec_dims);
            auto labels = decompose_symmetric_power(dec_d, dims);
            ordered_json out;
            out["command"] = "decompose";
            out["d"] = dec_d;
            out["dims"] = dims;
            ordered_json lj = ordered_json::array();
            mpz_class total = 0;
            for (const auto& l : labels) {
                mpz_class dim = static_cast<long>(l.multiplicity_in_Sd);
                for (std::size_t i = 0; i < dims.size(); ++i)
                    dim *= static_cast<long>(
                        gl_dimension(l.partitions[i], dims[i]));
                total += dim;
                lj.push_back({{"label", l.str()},
                              {"multiplicity", l.multiplicity_in_Sd},
                              {"dimension", dim.get_str()}});
            }
            out["labels"] = lj;
            out["total_dimension"] = total.get_str();
            stamp(out, cfg, start);
            emit(out, cfg);
        } else if (*cub) {
            std::vector<int> dims = parse_dims(cub_dims);
            std::vector<CubicFamily> fams;
            long long dim = cubic_ideal_dimension(dims, &fams);
            ordered_json out;
            out["command"] = "cubics";
            out["dims"] = dims;
            out["dimension"] = dim;
            ordered_json fj = ordered_json::array();
            for (const auto& fam : fams)
                fj.push_back({{"assignment", fam.assignment},
                              {"multiplicity", fam.multiplicity},
                              {"dimension", fam.dimension}});
            out["families"] = fj;
            if (dims.size() == 3) {
                mpq_class cf =
                    cubic_closed_form_3(dims[0], dims[1], dims[2]);
                out["closed_form"] = q_str(cf);
                out["closed_form_matches"] = (cf == static_cast<long>(dim));
            } else if (dims.size() == 4) {
                mpq_class cf = cubic_closed_form_4(dims[0], dims[1], dims[2],
                                                   dims[3]);
                out["closed_form"] = q_str(cf);
                out["closed_form_matches"] = (cf == static_cast<long>(dim));
            }
            stamp(out, cfg, start);
            emit(out, cfg);
        } else if (*scan) {
            std::vector<int> dims = parse_dims(scan_dims);
            SecantSpec spec{dims, scan_r, cfg.seed};
            ScanOptions opts;
            opts.point_sets = scan_point_sets;
            opts.use_weight_basis = scan_wb;
            opts.salt = scan_salt;
            if (!scan_labels.empty()) {
                std::stringstream ss(scan_labels);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    opts.label_filter.push_back(tok);
            }
            bool exceeded = false;
            ScanReport report = scan_with_budget(scan_d, spec, opts,
                                                 cfg.budget_sec, start,
                                                 exceeded);
            ordered_json out;
            out["command"] = "scan";
            ordered_json rj = report_json(report);
            for (auto& [k, v] : rj.items()) out[k] = v;
            out["budget_exceeded"] = exceeded;
            stamp(out, cfg, start);
            emit(out, cfg);
            if (!scan_csv.empty()) report_csv(report, scan_csv);
            if (exceeded) return kExitBudget;
        } else if (*ter) {
            std::vector<int> dims = parse_dims(ter_dims);
            PrimeField f(run_primes(1)[0]);
            SecantSpec spec{dims, ter_r, cfg.seed};
            std::size_t dim = terracini_dimension(spec, f);
            std::size_t ambient = 1;
            for (int d : dims) ambient *= static_cast<std::size_t>(d);
            ordered_json out;
            out["command"] = "terracini";
            out["dims"] = dims;
            out["r"] = ter_r;
            out["dimension"] = dim;
            out["ambient"] = ambient;
            out["fills"] = (dim == ambient);
            stamp(out, cfg, start);
            emit(out, cfg);
        } else if (*gss) {
            QTensor t = load_tensor(gss_path);
            Sigma2Certificate cert = gss_sigma2_test(t);
            ordered_json out;
            out["command"] = "gss";
            out["dims"] = t.dims;
            const char* kind = nullptr;
            switch (cert.kind) {
                case Sigma2Certificate::Kind::RankOne: kind = "rank-one"; break;
                case Sigma2Certificate::Kind::RankTwo: kind = "rank-two"; break;
                case Sigma2Certificate::Kind::Tangent: kind = "tangent"; break;
                case Sigma2Certificate::Kind::Witness: kind = "witness"; break;
            }
            out["kind"] = kind;
            out["in_sigma2"] = (cert.kind != Sigma2Certificate::Kind::Witness);
            out["degenerate"] = cert.degenerate;
            if (cert.kind == Sigma2Certificate::Kind::RankOne ||
                cert.kind == Sigma2Certificate::Kind::RankTwo) {
                out["point1"] = qvecs_json(cert.point1);
                if (cert.kind == Sigma2Certificate::Kind::RankTwo)
                    out["point2"] = qvecs_json(cert.point2);
                if (cert.disc != 0) {
                    out["disc"] = q_str(cert.disc);
                    out["point1_surd"] = qvecs_json(cert.point1_surd);
                    out["point2_surd"] = qvecs_json(cert.point2_surd);
                }
            } else if (cert.kind == Sigma2Certificate::Kind::Tangent) {
                out["base"] = qvecs_json(cert.base);
                out["perturbation"] = qvecs_json(cert.perturbation);
            } else {
                out["split"] = cert.split;
                out["rows"] = cert.rows;
                out["cols"] = cert.cols;
                out["minor_value"] = q_str(cert.minor_value);
            }
            out["verified"] = verify_certificate(cert, t);
            stamp(out, cfg, start);
            emit(out, cfg);
            if (!out["verified"].get<bool>()) return kExitInternal;
        } else if (*fr) {
            QTensor t = load_tensor(fr_path);
            std::vector<int> split = parse_dims(fr_split);
            std::vector<int> rows;
            for (int s : split) rows.push_back(s - 1);
            std::size_t rank = flattening_rank(t, rows);
            ordered_json out;
            out["command"] = "flatten-rank";
            out["dims"] = t.dims;
            out["split"] = split;
            out["rank"] = rank;
            stamp(out, cfg, start);
            emit(out, cfg);
        } else if (*ev) {
            MinorProductForm form = resolve_form(ev_form);
            PrimeField f(run_primes(1)[0]);
            SecantSpec spec{form.dims, ev_r, cfg.seed};
            auto points = sample_secant_point(spec, f);
            ordered_json out;
            out["command"] = "eval";
            out["form"] = ev_form;
            out["r"] = ev_r;
            uint64_t value;
            if (!ev_pattern.empty()) {
                HomogeneityPattern pat;
                for (int m : parse_dims(ev_pattern))
                    pat.multiplicities.push_back(m);
                while (static_cast<int>(pat.multiplicities.size()) < ev_r)
                    pat.multiplicities.push_back(0);
                if (pat.total() != form.degree)
                    throw CLI::ValidationError(
                        "pattern must sum to the form degree");
                value = eval_pattern(form, points, pat, f);
                out["pattern"] = pat.multiplicities;
            } else {
                value = eval_at_sum(form, points, f);
                out["pattern"] = nullptr;
            }
            out["value"] = value;
            out["prime"] = f.prime();
            stamp(out, cfg, start);
            emit(out, cfg);
        } else if (*cat) {
            ordered_json out;
            out["command"] = "catalog";
            if (!cat_name.empty()) {
                const CatalogEntry& e = catalog_lookup(cat_name);
                out["name"] = e.name;
                out["description"] = e.description;
                ordered_json forms = ordered_json::array();
                for (const auto& fm : e.forms) forms.push_back(form_json(fm));
                out["forms"] = forms;
            } else {
                ordered_json entries = ordered_json::array();
                for (const auto& e : form_catalog())
                    entries.push_back({{"name", e.name},
                                       {"description", e.description},
                                       {"forms", e.forms.size()}});
                out["entries"] = entries;
            }
            stamp(out, cfg, start);
            emit(out, cfg);
        } else if (*rep) {
            return cmd_reproduce(rep_case, cfg);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
