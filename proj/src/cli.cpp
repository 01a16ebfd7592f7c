#include "heun_air/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heun_air/errors.hpp"
#include "heun_air/solutions.hpp"

namespace heun_air {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::pair<Command, std::string>> kCommands = {
    {Command::detect, "detect"}, {Command::solve, "solve"},   {Command::convert, "convert"},
    {Command::eval, "eval"},     {Command::verify, "verify"}, {Command::paper_suite, "paper-suite"},
};

struct FormInfo {
    Family family;
    enum Kind { family_form, normal_form, canonical_form } kind;
    std::vector<std::string> keys;
};

const std::map<std::string, FormInfo>& forms() {
    static const std::map<std::string, FormInfo> table = {
        {"bhe_family", {Family::BHE, FormInfo::family_form, {"sigma", "tau"}}},
        {"che_family", {Family::CHE, FormInfo::family_form, {"lambda", "sigma", "tau"}}},
        {"ghe_family", {Family::GHE, FormInfo::family_form, {"a", "delta", "sigma", "tau"}}},
        {"bhe_normal", {Family::BHE, FormInfo::normal_form, {"B", "C", "D", "E"}}},
        {"che_normal", {Family::CHE, FormInfo::normal_form, {"A", "B", "C", "D", "E"}}},
        {"ghe_normal", {Family::GHE, FormInfo::normal_form, {"a", "A", "B", "D", "E", "F"}}},
        {"bhe_canonical", {Family::BHE, FormInfo::canonical_form, {"alpha", "beta", "gamma", "delta"}}},
        {"che_canonical",
         {Family::CHE, FormInfo::canonical_form, {"alpha", "beta", "gamma", "delta", "eta"}}},
        {"ghe_canonical",
         {Family::GHE, FormInfo::canonical_form,
          {"a", "q", "alpha", "beta", "gamma", "delta", "epsilon"}}},
    };
    return table;
}

const std::set<std::string> kCommonKeys = {"command", "form", "grid", "tol", "branch", "out"};

[[noreturn]] void schema(const std::string& path, const std::string& why) {
    throw SchemaError(path + ": " + why);
}

Cx read_cx(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    schema(path, "expected a number or [re, im]");
}

double read_real(const json& v, const std::string& path) {
    if (!v.is_number()) schema(path, "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) schema(path, "must be finite");
    return d;
}

Grid checked_grid(Grid g, const std::string& path) {
    if (!std::isfinite(g.start) || !std::isfinite(g.stop)) schema(path, "bounds must be finite");
    if (g.count == 0) schema(path, "count must be at least 1");
    if (g.count > kMaxGridCount) schema(path, "count exceeds 100000");
    return g;
}

json cx_json(Cx z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

json family_json(const FamilyParams& f) {
    json j;
    std::visit([&j](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BHEFamily>) {
            j["form"] = "bhe_family";
        } else if constexpr (std::is_same_v<T, CHEFamily>) {
            j["form"] = "che_family";
            j["lambda"] = cx_json(g.lambda);
        } else {
            j["form"] = "ghe_family";
            j["a"] = cx_json(g.a);
            j["delta"] = cx_json(g.delta);
        }
        j["sigma"] = cx_json(g.sigma);
        j["tau"] = cx_json(g.tau);
    }, f);
    return j;
}

json table_json(const std::string& form, const ParamTable& t) {
    json j;
    j["form"] = form;
    for (const auto& key : forms().at(form).keys)
        if (auto it = t.find(key); it != t.end()) j[key] = cx_json(it->second);
    return j;
}

json normal_json(const NormalParams& n) {
    return table_json(lower(family_name(n.family)) + "_normal", n.values);
}

json canonical_json(const CanonicalParams& c) {
    return table_json(lower(family_name(c.family)) + "_canonical", c.values);
}

json input_json(const EquationInput& in) {
    if (auto* f = std::get_if<FamilyParams>(&in)) return family_json(*f);
    if (auto* n = std::get_if<NormalParams>(&in)) return normal_json(*n);
    return canonical_json(std::get<CanonicalParams>(in));
}

std::vector<FamilyParams> candidates(const EquationInput& in) {
    if (auto* f = std::get_if<FamilyParams>(&in)) return {*f};
    if (auto* n = std::get_if<NormalParams>(&in)) return normal_to_family(*n);
    return canonical_to_family(std::get<CanonicalParams>(in));
}

FamilyParams select_family(const JobSpec& job) {
    if (!job.input) throw SchemaError("$.form: an equation description is required");
    auto list = candidates(*job.input);
    if (list.empty()) throw DomainError("the equation is not a member of a solvable family");
    if (job.branch >= list.size())
        throw SchemaError("$.branch: index " + std::to_string(job.branch) + " out of range (" +
                          std::to_string(list.size()) + " candidates)");
    return list[job.branch];
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

json report_json(const VerificationReport& r) {
    json j;
    j["subject"] = r.subject;
    if (r.family) j["family"] = family_json(*r.family);
    j["status"] = status_name(r.status);
    j["max_residual"] = r.max_residual;
    j["wronskian_drift"] = r.wronskian_drift;
    j["rk_max_rel_error"] = r.rk_max_rel_error;
    j["points_checked"] = r.points_checked;
    json rows = json::array();
    for (const CheckRow& row : r.rows) {
        json k;
        k["check"] = row.check;
        k["x"] = cx_json(row.x);
        k["member"] = row.member;
        k["value"] = std::isfinite(row.value) ? json(row.value) : json(nullptr);
        k["tolerance"] = row.tolerance;
        k["passed"] = row.passed;
        if (!row.note.empty()) k["note"] = row.note;
        rows.push_back(k);
    }
    j["rows"] = rows;
    return j;
}

RunResult do_detect(const JobSpec& job) {
    if (!job.input) throw SchemaError("$.form: an equation description is required");
    json j;
    j["command"] = "detect";
    j["input"] = input_json(*job.input);
    json list = json::array();
    for (const FamilyParams& f : candidates(*job.input)) {
        json c = family_json(f);
        c["classification"] = is_liouvillian(f) ? "Liouvillian" : "Hypergeometric";
        list.push_back(c);
    }
    j["candidates"] = list;
    return {0, j.dump(2) + "\n", ""};
}

RunResult do_solve(const JobSpec& job) {
    FamilyParams f = select_family(job);
    SolutionBasis b = solve(f);
    json j;
    j["command"] = "solve";
    j["family"] = family_json(f);
    j["classification"] = classification_name(b.classification);
    j["formula"] = b.formula;
    j["domain"] = b.valid_domain.description;
    json p = json::object();
    for (const auto& [k, v] : b.parameters) p[k] = cx_json(v);
    j["parameters"] = p;
    json e = json::object();
    for (const auto& [k, v] : b.expressions) e[k] = v;
    j["expressions"] = e;
    j["normal_form_q"] = to_string(family_to_normal(f).c0);
    return {0, j.dump(2) + "\n", ""};
}

RunResult do_convert(const JobSpec& job) {
    if (!job.input) throw SchemaError("$.form: an equation description is required");
    const EquationInput& in = *job.input;
    json j;
    j["command"] = "convert";
    j["input"] = input_json(in);
    json fam = json::array(), normal = json::array(), canon = json::array();
    std::vector<FamilyParams> fs = candidates(in);
    for (const auto& f : fs) fam.push_back(family_json(f));
    if (auto* c = std::get_if<CanonicalParams>(&in)) {
        normal.push_back(normal_json(canonical_to_normal(*c)));
    } else if (auto* n = std::get_if<NormalParams>(&in)) {
        for (const auto& f : fs)
            for (const auto& c : family_to_canonical(f)) canon.push_back(canonical_json(c));
        (void)n;
    } else {
        const FamilyParams& f = std::get<FamilyParams>(in);
        normal.push_back(normal_json(family_to_normal_params(f)));
        for (const auto& c : family_to_canonical(f)) canon.push_back(canonical_json(c));
    }
    j["family"] = fam;
    if (!std::holds_alternative<NormalParams>(in)) j["normal"] = normal;
    if (!std::holds_alternative<CanonicalParams>(in)) j["canonical"] = canon;
    return {0, j.dump(2) + "\n", ""};
}

RunResult do_eval(const JobSpec& job) {
    if (!job.grid) throw SchemaError("$.grid: eval needs a grid (start:stop:count)");
    FamilyParams f = select_family(job);
    SolutionBasis b = solve(f);
    std::vector<Cx> xs;
    bool any_inside = false;
    for (double x : grid_points(*job.grid)) {
        xs.emplace_back(x);
        any_inside = any_inside || b.valid_domain.contains(Cx{x});
    }
    if (!any_inside)
        throw DomainError("the grid does not intersect the domain (" + b.valid_domain.description + ")");
    auto rows = eval_basis(b, xs);
    std::ostringstream os;
    os << "x_re,x_im,y1_re,y1_im,y1p_re,y1p_im,y2_re,y2_im,y2p_re,y2p_im,status\n";
    std::size_t ok = 0;
    for (const EvalRow& r : rows) {
        os << csv_number(r.x.real()) << ',' << csv_number(r.x.imag());
        for (Cx v : {r.y1.v, r.y1.d, r.y2.v, r.y2.d}) {
            if (r.ok) os << ',' << csv_number(v.real()) << ',' << csv_number(v.imag());
            else os << ",nan,nan";
        }
        os << ',' << csv_field(r.status) << '\n';
        ok += r.ok;
    }
    std::string msg;
    if (ok < rows.size()) msg = std::to_string(rows.size() - ok) + " of " + std::to_string(rows.size()) + " rows failed";
    return {ok == 0 ? 1 : 0, os.str(), msg};
}

RunResult do_verify(const JobSpec& job) {
    FamilyParams f = select_family(job);
    Tolerances tol;
    if (job.tol) tol.residual = *job.tol;
    VerificationReport r = verify_family(f, tol);
    json j;
    j["command"] = "verify";
    j["report"] = report_json(r);
    return {r.status == Status::fail ? 1 : 0, j.dump(2) + "\n", ""};
}

RunResult do_paper_suite(const JobSpec& job) {
    std::vector<VerificationReport> reports;
    const double tol = job.tol.value_or(1e-8);
    for (auto [a, k] : std::vector<std::pair<double, double>>{{0.7, 1.3}, {2.5, -0.4}, {1.6, 0.9}})
        reports.push_back(paper_example_suite(a, k, tol));
    const std::vector<FamilyParams> battery = {
        BHEFamily{0.3, 0.9},
        BHEFamily{1.0, 1.0},
        BHEFamily{0.7, -0.7},
        BHEFamily{-1.2, 0.4},
        CHEFamily(1.0, 0.2, 0.6),
        CHEFamily(0.8, 0.2, 0.6),
        CHEFamily(1.0, 0.5, 0.5),
        CHEFamily(-0.6, 0.4, -0.4),
        GHEFamily(2.0, 0.5, 0.1, 0.4),
        GHEFamily(2.0, 0.5, 0.3, 0.3),
        GHEFamily(2.5, -0.7, 0.2, -0.2),
        GHEFamily(1.7, 0.9, -0.6, 0.8),
    };
    for (const auto& f : battery) reports.push_back(verify_family(f));
    json j;
    j["command"] = "paper-suite";
    json list = json::array();
    bool all = true;
    for (const auto& r : reports) {
        json s = report_json(r);
        s.erase("rows");
        list.push_back(s);
        all = all && r.status != Status::fail;
    }
    j["reports"] = list;
    j["status"] = all ? "pass" : "fail";
    return {all ? 0 : 1, j.dump(2) + "\n", ""};
}

}  // namespace

const char* command_name(Command c) {
    for (const auto& [k, n] : kCommands)
        if (k == c) return n.c_str();
    return "?";
}

std::optional<Command> command_from_name(const std::string& name) {
    for (const auto& [k, n] : kCommands)
        if (n == name) return k;
    return std::nullopt;
}

Grid parse_grid(const std::string& text) {
    std::stringstream ss(text);
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n) ||
        n.find(':') != std::string::npos)
        schema("--grid", "expected start:stop:count");
    Grid g;
    try {
        std::size_t used = 0;
        g.start = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        g.stop = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        long long c = std::stoll(n, &used);
        if (used != n.size() || c < 0) throw std::invalid_argument(n);
        g.count = static_cast<std::size_t>(c);
    } catch (const std::logic_error&) {
        schema("--grid", "expected start:stop:count");
    }
    return checked_grid(g, "--grid");
}

std::vector<double> grid_points(const Grid& g) {
    std::vector<double> xs;
    xs.reserve(g.count);
    for (std::size_t i = 0; i < g.count; ++i)
        xs.push_back(g.count == 1 ? g.start
                                  : g.start + (g.stop - g.start) * double(i) / double(g.count - 1));
    return xs;
}

JobSpec parse_spec(const std::string& text, std::optional<Command> command) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        schema("$", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) schema("$", "expected an object");

    JobSpec job;
    if (doc.contains("command")) {
        if (!doc["command"].is_string()) schema("$.command", "expected a string");
        auto c = command_from_name(doc["command"].get<std::string>());
        if (!c) schema("$.command", "unknown command '" + doc["command"].get<std::string>() + "'");
        if (command && *command != *c) schema("$.command", "disagrees with the command line");
        job.command = *c;
    } else if (command) {
        job.command = *command;
    } else {
        schema("$.command", "missing");
    }

    std::set<std::string> allowed = kCommonKeys;
    if (doc.contains("form")) {
        if (!doc["form"].is_string()) schema("$.form", "expected a string");
        const std::string name = doc["form"].get<std::string>();
        auto it = forms().find(name);
        if (it == forms().end()) schema("$.form", "unknown form '" + name + "'");
        const FormInfo& info = it->second;
        ParamTable t;
        for (const std::string& k : info.keys) {
            allowed.insert(k);
            if (!doc.contains(k)) schema("$." + k, "missing for form " + name);
            t[k] = read_cx(doc[k], "$." + k);
        }
        try {
            switch (info.kind) {
                case FormInfo::family_form:
                    if (info.family == Family::BHE) job.input = FamilyParams{BHEFamily{t["sigma"], t["tau"]}};
                    else if (info.family == Family::CHE)
                        job.input = FamilyParams{CHEFamily(t["lambda"], t["sigma"], t["tau"])};
                    else job.input = FamilyParams{GHEFamily(t["a"], t["delta"], t["sigma"], t["tau"])};
                    break;
                case FormInfo::normal_form: job.input = NormalParams{info.family, t}; break;
                case FormInfo::canonical_form: job.input = CanonicalParams{info.family, t}; break;
            }
        } catch (const ParamError& e) {
            schema("$", e.what());
        }
    } else if (job.command != Command::paper_suite) {
        schema("$.form", "missing (one of bhe/che/ghe _family, _normal, _canonical)");
    }
    for (const auto& [k, v] : doc.items())
        if (!allowed.count(k)) schema("$." + k, "unknown field");

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        if (g.is_string()) {
            job.grid = parse_grid(g.get<std::string>());
        } else if (g.is_object()) {
            for (const auto& [k, v] : g.items())
                if (k != "start" && k != "stop" && k != "count") schema("$.grid." + k, "unknown field");
            for (const char* k : {"start", "stop", "count"})
                if (!g.contains(k)) schema(std::string("$.grid.") + k, "missing");
            if (!g["count"].is_number_integer() || g["count"].get<long long>() < 0)
                schema("$.grid.count", "expected a nonnegative integer");
            Grid gr{read_real(g["start"], "$.grid.start"), read_real(g["stop"], "$.grid.stop"),
                    g["count"].get<std::size_t>()};
            job.grid = checked_grid(gr, "$.grid");
        } else {
            schema("$.grid", "expected {start, stop, count} or \"start:stop:count\"");
        }
    }
    if (doc.contains("tol")) {
        double t = read_real(doc["tol"], "$.tol");
        if (t <= 0) schema("$.tol", "must be positive");
        job.tol = t;
    }
    if (doc.contains("branch")) {
        if (!doc["branch"].is_number_integer() || doc["branch"].get<long long>() < 0)
            schema("$.branch", "expected a nonnegative integer");
        job.branch = doc["branch"].get<std::size_t>();
    }
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) schema("$.out", "expected a string");
        job.out = doc["out"].get<std::string>();
    }
    return job;
}

std::string report_to_json(const VerificationReport& r, int indent) {
    return report_json(r).dump(indent);
}

RunResult run(const JobSpec& job) {
    try {
        switch (job.command) {
            case Command::detect: return do_detect(job);
            case Command::solve: return do_solve(job);
            case Command::convert: return do_convert(job);
            case Command::eval: return do_eval(job);
            case Command::verify: return do_verify(job);
            case Command::paper_suite: return do_paper_suite(job);
        }
    } catch (const HeunError& e) {
        return {2, "", std::string(e.kind()) + ": " + e.what()};
    }
    return {2, "", "unknown command"};
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Closed-form solutions of solvable Heun families", "heun-air"};
    std::string command, spec_path, out_path, grid;
    std::optional<std::size_t> branch;
    std::optional<double> tol;
    std::vector<std::string> names;
    for (const auto& [k, n] : kCommands) names.push_back(n);
    app.add_option("command", command, "detect | solve | convert | eval | verify | paper-suite")
        ->required()
        ->check(CLI::IsMember(names));
    app.add_option("--spec", spec_path, "JSON job description");
    app.add_option("--out", out_path, "write output to this file");
    app.add_option("--grid", grid, "evaluation grid start:stop:count");
    app.add_option("--branch", branch, "candidate index when several families match");
    app.add_option("--tol", tol, "residual tolerance");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const Command cmd = *command_from_name(command);
    JobSpec job;
    try {
        if (!spec_path.empty()) {
            std::ifstream in(spec_path);
            if (!in) throw SchemaError("--spec: cannot read " + spec_path);
            std::stringstream ss;
            ss << in.rdbuf();
            job = parse_spec(ss.str(), cmd);
        } else if (cmd == Command::paper_suite) {
            job.command = cmd;
        } else {
            throw SchemaError("--spec: required for " + command);
        }
        if (!grid.empty()) job.grid = parse_grid(grid);
        if (branch) job.branch = *branch;
        if (tol) {
            if (!(*tol > 0)) throw SchemaError("--tol: must be positive");
            job.tol = *tol;
        }
        if (!out_path.empty()) job.out = out_path;
    } catch (const HeunError& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 2;
    }

    RunResult r = run(job);
    if (!r.message.empty()) std::cerr << r.message << "\n";
    if (job.out) {
        std::ofstream o(*job.out, std::ios::binary);
        if (!o) {
            std::cerr << "cannot write " << *job.out << "\n";
            return 2;
        }
        o << r.output;
    } else {
        std::cout << r.output;
    }
    return r.exit_code;
}

}  // namespace heun_air
