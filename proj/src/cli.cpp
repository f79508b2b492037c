#include "tqc/cli.hpp"

#include "tqc/errors.hpp"
#include "tqc/json_io.hpp"
#include "tqc/metric.hpp"
#include "tqc/potential.hpp"
#include "tqc/product.hpp"
#include "tqc/variety.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace tqc::cli {

namespace {

struct Options {
    std::string variety;
    std::optional<int> q, x, y;
    std::string format;
    std::string output;
    std::string store;
    std::string degree;
    bool all = false;
    std::optional<int> points, tangents;
    std::string checks;
};

/// Thrown for unusable models; carries the validation report.
struct InvalidModel : std::runtime_error {
    std::vector<std::string> violations;
    InvalidModel(const std::string& what, std::vector<std::string> v)
        : std::runtime_error(what), violations(std::move(v)) {}
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

CohomologyModel load_model(const std::string& id) {
    if (auto p = parse_preset(id)) return preset(*p);
    std::ifstream in(id);
    if (!in) throw InvalidModel("'" + id + "' is neither a preset (p1, p2, p3, p1xp1) nor a readable file", {});
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidModel("model file is not valid JSON: " + std::string(e.what()), {});
    }
    try {
        return model_from_json(j);
    } catch (const StructuralError& e) {
        throw InvalidModel(e.what(), {});
    } catch (const DomainError& e) {
        throw InvalidModel(e.what(), {});
    }
}

std::vector<int> parse_degree(const CohomologyModel& m, const std::string& text) {
    std::vector<int> beta;
    for (const auto& part : split(text, ',')) {
        try {
            std::size_t used = 0;
            beta.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw DomainError("--degree: '" + text + "' is not a comma-separated list of integers");
        }
    }
    if (static_cast<int>(beta.size()) != m.lattice_rank)
        throw DomainError("--degree: " + m.name + " needs " + std::to_string(m.lattice_rank) + " component(s)");
    return beta;
}

std::string degree_text(const std::vector<int>& beta) {
    std::string s;
    for (std::size_t i = 0; i < beta.size(); ++i) s += (i ? "," : "") + std::to_string(beta[i]);
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

json trunc_json(const TruncSpec& t) { return {{"q", t.q}, {"x", t.x}, {"y", t.y}}; }

void render_matrix_text(std::ostream& os, const std::string& label, const SeriesMatrix& mat, int sign) {
    const VarSpace& space = mat.space();
    const TruncSpec& trunc = mat.trunc();
    // Entries are exp(sign*2*y0) times a y0-free polynomial; print that form
    // when it holds within the truncation.
    const Series unexp = exp_series(Series::variable(space, trunc, yv(0), Rat(-2 * sign)));
    std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(mat.dim()));
    bool factored = true;
    for (int i = 0; i < mat.dim(); ++i)
        for (int j = 0; j < mat.dim(); ++j) {
            const Series p = mat(i, j) * unexp;
            factored = factored && set_zero(p, {yv(0)}) == p;
            cells[static_cast<std::size_t>(i)].push_back(p.to_string());
        }
    if (!factored)
        for (int i = 0; i < mat.dim(); ++i)
            for (int j = 0; j < mat.dim(); ++j)
                cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mat(i, j).to_string();
    std::vector<std::size_t> width(static_cast<std::size_t>(mat.dim()), 0);
    for (const auto& row : cells)
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    os << label << " =" << (factored ? " " : "") << (factored ? (sign > 0 ? "exp(2*y0) *" : "exp(-2*y0) *") : "") << "\n";
    for (const auto& row : cells) {
        os << "  [ ";
        for (std::size_t j = 0; j < row.size(); ++j)
            os << std::left << std::setw(static_cast<int>(width[j])) << row[j] << (j + 1 < row.size() ? "  " : " ");
        os << "]\n";
    }
}

void series_csv(std::ostream& os, const std::string& label, const Series& s) {
    for (const auto& t : s.terms())
        os << csv_field(label) << ',' << mono_string(s.space(), t.mono) << ',' << t.coeff.str() << '\n';
}

int cmd_gamma(const Options& o, const CohomologyModel& m, std::ostream& os) {
    const TruncSpec trunc{o.q.value_or(0), o.x.value_or(0), o.y.value_or(3)};
    const DeformedMetric met = build_gamma(m, trunc);
    const std::string format = o.format.empty() ? "text" : o.format;
    if (format == "json") {
        json lower = json::array(), upper = json::array();
        for (int i = 0; i < m.rank; ++i) {
            json lr = json::array(), ur = json::array();
            for (int j = 0; j < m.rank; ++j) {
                lr.push_back(series_to_json(met.lower(i, j)));
                ur.push_back(series_to_json(met.upper(i, j)));
            }
            lower.push_back(std::move(lr));
            upper.push_back(std::move(ur));
        }
        os << json{{"variety", m.name}, {"trunc", trunc_json(trunc)}, {"lower", lower}, {"upper", upper}}.dump(1)
           << '\n';
    } else if (format == "csv") {
        os << "matrix,i,j,monomial,coefficient\n";
        for (const char* which : {"lower", "upper"}) {
            const SeriesMatrix& mat = std::string(which) == "lower" ? met.lower : met.upper;
            for (int i = 0; i < m.rank; ++i)
                for (int j = 0; j < m.rank; ++j)
                    for (const auto& t : mat(i, j).terms())
                        os << which << ',' << i << ',' << j << ',' << mono_string(mat.space(), t.mono) << ','
                           << t.coeff.str() << '\n';
        }
    } else {
        os << "variety " << m.name << ", terms up to total y-degree " << trunc.y << "\n";
        render_matrix_text(os, "gamma^ij (upper)", met.upper, 1);
        render_matrix_text(os, "gamma_ij (lower)", met.lower, -1);
    }
    return exit_ok;
}

int cmd_charnum(const Options& o, InvariantStore& store, std::ostream& os) {
    const CohomologyModel& m = store.model();
    if (o.degree.empty()) throw DomainError("charnum: --degree is required");
    const std::vector<int> beta = parse_degree(m, o.degree);
    vdim(m, beta, 0);
    std::vector<CharNumRow> rows;
    if (o.points || o.tangents) {
        if (o.all) throw DomainError("charnum: --all excludes --points/--tangents");
        if (!o.points || !o.tangents) throw DomainError("charnum: give both --points and --tangents");
        rows.push_back({beta, *o.points, *o.tangents, characteristic_number(store, beta, *o.points, *o.tangents)});
    } else {
        rows = characteristic_row(store, beta);
    }
    const std::string format = o.format.empty() ? "text" : o.format;
    if (format == "json") {
        json jr = json::array();
        for (const auto& r : rows) jr.push_back({{"points", r.points}, {"tangents", r.tangents}, {"value", r.value.str()}});
        os << json{{"variety", m.name}, {"beta", beta}, {"rows", jr}}.dump(1) << '\n';
    } else if (format == "csv") {
        os << "degree,points,tangents,value\n";
        for (const auto& r : rows)
            os << csv_field(degree_text(beta)) << ',' << r.points << ',' << r.tangents << ',' << r.value.str() << '\n';
    } else {
        os << "variety " << m.name << ", degree " << degree_text(beta) << "\n";
        os << std::left << std::setw(8) << "points" << std::setw(10) << "tangents" << "value\n";
        for (const auto& r : rows)
            os << std::left << std::setw(8) << r.points << std::setw(10) << r.tangents << r.value.pretty() << '\n';
    }
    return exit_ok;
}

int cmd_potential(const Options& o, InvariantStore& store, std::ostream& os) {
    const CohomologyModel& m = store.model();
    const TruncSpec trunc{o.q.value_or(2), o.x.value_or(3), o.y.value_or(2)};
    const DeformedMetric met = build_gamma(m, trunc);
    const PotentialSeries pot = full_potential(store, met);
    const std::string format = o.format.empty() ? "json" : o.format;
    if (format == "json") {
        os << json{{"variety", m.name},
                   {"trunc", trunc_json(trunc)},
                   {"gamma", series_to_json(pot.gamma_pot)},
                   {"classical", series_to_json(pot.classical)},
                   {"full", series_to_json(pot.full)}}
                  .dump(1)
           << '\n';
    } else if (format == "csv") {
        os << "series,monomial,coefficient\n";
        series_csv(os, "gamma", pot.gamma_pot);
        series_csv(os, "classical", pot.classical);
        series_csv(os, "full", pot.full);
    } else {
        os << "variety " << m.name << ", caps q<=" << trunc.q << " x<=" << trunc.x << " y<=" << trunc.y << "\n";
        os << "Gamma = " << pot.gamma_pot.to_string() << "\n";
        os << "Phi0 = " << pot.classical.to_string() << "\n";
        os << "Phi = " << pot.full.to_string() << "\n";
    }
    return exit_ok;
}

struct VerifyOutcome {
    std::string variety;
    TruncSpec trunc;
    std::vector<CheckReport> reports;
    bool passed() const {
        for (const auto& r : reports)
            if (!r.passed) return false;
        return true;
    }
};

std::vector<std::string> default_checks(const CohomologyModel& m) {
    std::vector<std::string> out;
    for (const auto& c : check_names())
        if (c != "gamma222" || m.name == "p2") out.push_back(c);
    return out;
}

VerifyOutcome verify_model(const Options& o, const CohomologyModel& m, InvariantStore* store) {
    VerifyOutcome v{m.name, TruncSpec{o.q.value_or(2), o.x.value_or(2), o.y.value_or(3)}, {}};
    const ValidationReport vr = validate(m);
    CheckReport model_report;
    model_report.check = "model";
    model_report.identities = 1;
    if (!vr.ok()) {
        model_report.passed = false;
        model_report.first_failure = Failure{vr.violations.front(), "", "", ""};
        v.reports.push_back(model_report);
        return v;
    }
    v.reports.push_back(model_report);
    const std::vector<std::string> checks = o.checks.empty() ? default_checks(m) : split(o.checks, ',');
    if (store) {
        for (auto& r : run_checks(*store, checks, v.trunc)) v.reports.push_back(std::move(r));
    } else {
        InvariantStore local(m);
        for (auto& r : run_checks(local, checks, v.trunc)) v.reports.push_back(std::move(r));
    }
    return v;
}

void render_verify(const std::vector<VerifyOutcome>& outcomes, const std::string& format, std::ostream& os) {
    if (format == "json") {
        json all = json::array();
        for (const auto& v : outcomes) {
            json checks = json::array();
            for (const auto& r : v.reports) checks.push_back(report_to_json(r));
            all.push_back({{"variety", v.variety},
                           {"trunc", trunc_json(v.trunc)},
                           {"status", v.passed() ? "pass" : "fail"},
                           {"checks", checks}});
        }
        os << (outcomes.size() == 1 ? all.front() : all).dump(1) << '\n';
    } else if (format == "csv") {
        os << "variety,check,status,identities,location,monomial,lhs,rhs\n";
        for (const auto& v : outcomes)
            for (const auto& r : v.reports) {
                os << v.variety << ',' << r.check << ',' << (r.passed ? "pass" : "fail") << ',' << r.identities;
                if (r.first_failure)
                    os << ',' << csv_field(r.first_failure->location) << ',' << csv_field(r.first_failure->monomial)
                       << ',' << r.first_failure->lhs << ',' << r.first_failure->rhs;
                else
                    os << ",,,,";
                os << '\n';
            }
    } else {
        for (const auto& v : outcomes) {
            os << "variety " << v.variety << ", caps q<=" << v.trunc.q << " x<=" << v.trunc.x << " y<=" << v.trunc.y
               << "\n";
            for (const auto& r : v.reports) {
                os << "  " << std::left << std::setw(12) << r.check << (r.passed ? "pass" : "FAIL") << "  ("
                   << r.identities << " identities)";
                if (r.first_failure) {
                    os << "  first failure at " << r.first_failure->location;
                    if (!r.first_failure->monomial.empty())
                        os << ", monomial " << r.first_failure->monomial << ": " << r.first_failure->lhs
                           << " != " << r.first_failure->rhs;
                }
                os << '\n';
            }
        }
    }
}

void load_store(InvariantStore& store, const std::string& path) {
    if (path.empty() || !std::filesystem::exists(path)) return;
    std::ifstream in(path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw StructuralError("store file is not valid JSON: " + std::string(e.what()));
    }
    if (j.contains("variety") && j.at("variety").get<std::string>() != store.model().name)
        throw StructuralError("store file belongs to variety '" + j.at("variety").get<std::string>() + "'");
    store.import_entries(store_entries_from_json(j));
}

void save_store(const InvariantStore& store, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write store file '" + path + "'");
    out << store_to_json(store).dump(1) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Tangency quantum cohomology engine"};
    app.name("tqc");
    app.set_config("--config", "", "Key-value file with the same keys as the command-line flags");
    app.fallthrough();
    app.require_subcommand(1, 1);
    app.add_option("--variety", o.variety, "Preset (p1, p2, p3, p1xp1) or path to a model JSON file");
    app.add_option("--q", o.q, "Weighted q-degree cap")->check(CLI::Range(0, 120));
    app.add_option("--x", o.x, "Total x-degree cap")->check(CLI::Range(0, 120));
    app.add_option("--y", o.y, "Total y-degree cap")->check(CLI::Range(0, 120));
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", o.output, "Write data to this file instead of standard output");
    app.add_option("--store", o.store, "Invariant store for warm starts (read if present, then written)");

    CLI::App* gamma = app.add_subcommand("gamma", "Deformed metric, lower and upper");
    CLI::App* charnum = app.add_subcommand("charnum", "Characteristic numbers of rational curves");
    charnum->add_option("--degree", o.degree, "Curve class: an integer, or a,b on p1xp1");
    charnum->add_flag("--all", o.all, "Every balanced (points, tangents) pair");
    charnum->add_option("--points", o.points, "Number of point conditions")->check(CLI::NonNegativeNumber);
    charnum->add_option("--tangents", o.tangents, "Number of tangency conditions")->check(CLI::NonNegativeNumber);
    app.add_subcommand("potential", "Gamma, Phi0 and Phi as series");
    CLI::App* verify = app.add_subcommand("verify", "Identity checks");
    verify->add_option("--checks", o.checks, "Comma-separated subset of the checks");

    std::vector<std::string> argv_store{"tqc"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid_input;
    }

    std::ostringstream data;
    int code = exit_ok;
    try {
        if (verify->parsed() && o.variety.empty()) {
            std::vector<VerifyOutcome> outcomes;
            for (PresetId id : all_presets()) outcomes.push_back(verify_model(o, preset(id), nullptr));
            render_verify(outcomes, o.format.empty() ? "json" : o.format, data);
            for (const auto& v : outcomes)
                if (!v.passed()) code = exit_verification_failed;
        } else {
            if (o.variety.empty()) throw InvalidModel("--variety is required", {});
            const CohomologyModel m = load_model(o.variety);
            if (verify->parsed()) {
                const ValidationReport vr = validate(m);
                std::optional<InvariantStore> store;
                if (vr.ok()) {
                    store.emplace(m);
                    load_store(*store, o.store);
                } else {
                    err << "model '" << m.name << "' failed validation\n";
                    for (const auto& v : vr.violations) err << "  " << v << '\n';
                }
                const VerifyOutcome v = verify_model(o, m, store ? &*store : nullptr);
                render_verify({v}, o.format.empty() ? "json" : o.format, data);
                if (store) save_store(*store, o.store);
                if (!v.passed()) code = exit_verification_failed;
            } else {
                const ValidationReport vr = validate(m);
                if (!vr.ok()) throw InvalidModel("model '" + m.name + "' failed validation", vr.violations);
                if (gamma->parsed()) {
                    code = cmd_gamma(o, m, data);
                } else {
                    InvariantStore store(m);
                    load_store(store, o.store);
                    code = charnum->parsed() ? cmd_charnum(o, store, data) : cmd_potential(o, store, data);
                    save_store(store, o.store);
                }
            }
        }
    } catch (const InvalidModel& e) {
        err << "error: " << e.what() << '\n';
        for (const auto& v : e.violations) err << "  " << v << '\n';
        return exit_invalid_input;
    } catch (const DimensionError& e) {
        err << "dimension error: " << e.what() << '\n';
        return exit_dimension;
    } catch (const UnsupportedKeyError& e) {
        err << "unsupported: " << e.what() << '\n';
        return exit_unsupported_key;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << '\n';
        return exit_verification_failed;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_input;
    }

    if (o.output.empty()) {
        out << data.str();
    } else {
        std::ofstream file(o.output);
        if (!file) {
            err << "error: cannot write '" << o.output << "'\n";
            return exit_invalid_input;
        }
        file << data.str();
    }
    return code;
}

}  // namespace tqc::cli
