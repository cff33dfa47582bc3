// qweyl: exact Weyl-operator calculus on q-character rings.
// Subcommands cover orbit tables, chi forms, sigma/theta series, Q-series,
// and the QQ/TQ verification drivers with text or JSON reports.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qweyl/qchar.hpp"

using namespace qweyl;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "1.0.0";

struct CommonOpts {
    std::string type = "A2";
    std::string matrixFile;
    int height = 6;
    std::string weyl;
    int node = 1;
    int shift = 0;
    std::string format = "text";
    int jobs = 1;
    unsigned seed = 0;
};

CartanData load_cartan(const CommonOpts& o) {
    if (!o.matrixFile.empty()) {
        std::ifstream in(o.matrixFile);
        if (!in) throw CLI::ValidationError("--matrix", "cannot open " + o.matrixFile);
        json j;
        in >> j;
        if (j.is_object() && j.contains("cartan")) j = j["cartan"];
        std::vector<std::vector<int>> m = j.get<std::vector<std::vector<int>>>();
        return CartanData::from_matrix(m, "custom");
    }
    return CartanData::from_label(o.type);
}

json term_json(const Term& t) {
    json jt;
    jt["coeff"] = t.coeff.to_string();
    jt["w"] = t.wt.c;
    jt["y"] = json::array();
    for (const auto& f : t.y.factors()) jt["y"].push_back({f.node, f.r, f.e});
    jt["psi"] = json::array();
    for (const auto& f : t.psi.factors()) jt["psi"].push_back({f.node, f.r, f.e});
    return jt;
}

json poly_json(const Poly& p) {
    json jp;
    jp["text"] = p.to_string();
    jp["terms"] = json::array();
    for (const auto& t : p.terms()) jp["terms"].push_back(term_json(t));
    return jp;
}

json config_json(const CommonOpts& o, const std::string& cmd) {
    json cfg;
    cfg["command"] = cmd;
    cfg["type"] = o.matrixFile.empty() ? o.type : ("matrix:" + o.matrixFile);
    cfg["height"] = o.height;
    if (!o.weyl.empty()) cfg["weyl"] = o.weyl;
    cfg["node"] = o.node;
    cfg["shift"] = o.shift;
    cfg["jobs"] = o.jobs;
    cfg["seed"] = o.seed;
    return cfg;
}

json report_json(const CommonOpts& o, const std::string& cmd, const VerifyReport& rep) {
    json out;
    out["tool_version"] = kToolVersion;
    out["config"] = config_json(o, cmd);
    out["cases"] = json::array();
    for (const auto& c : rep.cases) {
        json jc;
        jc["id"] = c.id;
        if (!c.w_word.empty()) jc["w_word"] = c.w_word;
        if (c.node) jc["i"] = c.node;
        jc["status"] = c.pass ? "pass" : "fail";
        jc["max_height"] = c.max_height;
        if (!c.witness.empty()) jc["first_discrepancy"] = c.witness;
        out["cases"].push_back(jc);
    }
    return out;
}

int emit_report(const CommonOpts& o, const std::string& cmd, const VerifyReport& rep) {
    if (o.format == "json") {
        std::cout << report_json(o, cmd, rep).dump(2) << "\n";
    } else {
        for (const auto& c : rep.cases)
            std::cout << (c.pass ? "pass " : "FAIL ") << c.id
                      << (c.witness.empty() ? "" : "  -- " + c.witness) << "\n";
        size_t ok = 0;
        for (const auto& c : rep.cases) ok += c.pass;
        std::cout << ok << "/" << rep.cases.size() << " cases passed\n";
    }
    return rep.all_pass() ? 0 : 1;
}

Weight parse_weight(const CartanData& cd, std::string text) {
    // accepts "w2", "-w2", "[c1,...,cn]" or "c1,...,cn"
    if (!text.empty() && (text[0] == 'w' || text[0] == 'W' ||
                          (text[0] == '-' && text.size() > 1 && (text[1] == 'w' || text[1] == 'W')))) {
        int sign = text[0] == '-' ? -1 : 1;
        int i = std::stoi(text.substr(text[0] == '-' ? 2 : 1));
        Weight w = cd.fundamental(i);
        return sign < 0 ? -w : w;
    }
    if (!text.empty() && text.front() == '[') text = text.substr(1, text.size() - 2);
    std::vector<int> coords;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) coords.push_back(std::stoi(tok));
    if (static_cast<int>(coords.size()) != cd.rank())
        throw CLI::ValidationError("--weight", "expected " + std::to_string(cd.rank()) + " coordinates");
    return Weight(coords);
}

int cmd_orbit(const CommonOpts& o) {
    CartanData cd = load_cartan(o);
    auto orbit = cd.orbit_fundamental(o.node);
    json jout;
    jout["tool_version"] = kToolVersion;
    jout["config"] = config_json(o, "orbit");
    jout["rows"] = json::array();
    for (const auto& [word, wt] : orbit) {
        Term y = extremal_Y(cd, word, o.node, o.shift);
        Term psi = psi_extremal(cd, word, o.node, o.shift);
        if (o.format == "json") {
            json row;
            row["word"] = word.to_string();
            row["weight"] = wt.to_string();
            row["Y"] = term_json(y);
            row["Psi"] = term_json(psi);
            jout["rows"].push_back(row);
        } else {
            std::cout << word.to_string() << "\t" << wt.to_string() << "\tY: " << y.to_display()
                      << "\tPsi: " << psi.to_display() << "\n";
        }
    }
    if (o.format == "json") std::cout << jout.dump(2) << "\n";
    return 0;
}

int cmd_chi(const CommonOpts& o, const std::string& weightText) {
    CartanData cd = load_cartan(o);
    Weight target = parse_weight(cd, weightText);
    int node = 0;
    WeylWord word;
    for (int i = 1; i <= cd.rank() && !node; ++i)
        for (const auto& [ww, wt] : cd.orbit_fundamental(i))
            if (wt == target) {
                node = i;
                word = ww;
                break;
            }
    if (!node) throw CLI::ValidationError("--weight", "not in a fundamental-weight orbit");
    RationalChar chi = chi_extremal(cd, word, node);
    TruncSeries exp = expand_char(cd, chi, cd.identity(), o.height);
    if (o.format == "json") {
        json jout;
        jout["tool_version"] = kToolVersion;
        jout["config"] = config_json(o, "chi");
        jout["weight"] = target.to_string();
        jout["factored"] = chi.to_string();
        jout["expanded"] = poly_json(exp.body());
        std::cout << jout.dump(2) << "\n";
    } else {
        std::cout << "chi_" << target.to_string() << " (word " << word.to_string() << ")\n";
        std::cout << "factored: " << chi.to_string() << "\n";
        std::cout << "expanded to height " << o.height << ": " << exp.body().to_display() << "\n";
    }
    return 0;
}

int cmd_sigma(const CommonOpts& o, const std::string& branch) {
    CartanData cd = load_cartan(o);
    SigmaBranch b = branch == "si" ? SigmaBranch::Si : SigmaBranch::E;
    WeylElt comp = b == SigmaBranch::E ? cd.identity() : cd.simple_reflection(o.node);
    TruncSeries s = sigma_series(cd, o.node, o.shift, b, o.height, comp);
    if (o.format == "json") {
        json jout;
        jout["tool_version"] = kToolVersion;
        jout["config"] = config_json(o, "sigma");
        jout["branch"] = branch;
        jout["series"] = poly_json(s.body());
        std::cout << jout.dump(2) << "\n";
    } else {
        std::cout << s.body().to_display() << " + O(ht " << o.height + 1 << ")\n";
    }
    return 0;
}

int cmd_theta(const CommonOpts& o) {
    CartanData cd = load_cartan(o);
    WeylWord w = WeylWord::parse(o.weyl);
    TruncSeries s = theta_to_e(cd, w, Poly::of(y_var(cd, o.node, o.shift)), o.height);
    if (o.format == "json") {
        json jout;
        jout["tool_version"] = kToolVersion;
        jout["config"] = config_json(o, "theta");
        jout["series"] = poly_json(s.body());
        std::cout << jout.dump(2) << "\n";
    } else {
        std::cout << s.body().to_display() << " + O(ht " << o.height + 1 << ")\n";
    }
    return 0;
}

int cmd_qseries(const CommonOpts& o) {
    CartanData cd = load_cartan(o);
    WeylWord w = WeylWord::parse(o.weyl);
    QCache cache;
    TruncSeries q = solve_Q(cd, w, o.node, o.height, &cache).tau(o.shift);
    TruncSeries chiq = expand_char(cd, chi_extremal(cd, w, o.node), cd.identity(), o.height).mul(q);
    if (o.format == "json") {
        json jout;
        jout["tool_version"] = kToolVersion;
        jout["config"] = config_json(o, "q-series");
        jout["Q"] = poly_json(q.body());
        jout["chi_times_Q"] = poly_json(chiq.body());
        std::cout << jout.dump(2) << "\n";
    } else {
        std::cout << "Q = " << q.body().to_display() << " + O(ht " << o.height + 1 << ")\n";
        std::cout << "e_e(chi) * Q = " << chiq.body().to_display() << " + O(ht " << o.height + 1
                  << ")\n";
    }
    return 0;
}

int cmd_braid(const CommonOpts& o, const std::string& alphabet, int window) {
    CartanData cd = load_cartan(o);
    VerifyReport rep;
    for (int i = 1; i <= cd.rank(); ++i)
        for (int j = i + 1; j <= cd.rank(); ++j) {
            auto push = [&](BraidAlphabet a, const char* name) {
                BraidReport br = check_braid(cd, i, j, a, window);
                CaseResult res;
                res.id = "braid(" + std::to_string(i) + "," + std::to_string(j) + ") order " +
                         std::to_string(br.order) + " on " + name;
                res.pass = br.pass;
                res.max_height = window;
                res.witness = br.counterexample;
                rep.cases.push_back(std::move(res));
            };
            if (alphabet == "Y" || alphabet == "both") push(BraidAlphabet::Y, "Y");
            if (alphabet == "Yprime" || alphabet == "both") push(BraidAlphabet::Yprime, "Yprime");
        }
    return emit_report(o, "braid-check", rep);
}

int cmd_shifted(const CommonOpts& o) {
    CartanData cd = load_cartan(o);
    WeylWord w = WeylWord::parse(o.weyl);
    QCache cache;
    ShiftedCharReport rep = shifted_qchar_report(cd, w, o.node, o.shift, o.height, &cache);
    std::string cw = "[";
    for (int k = 0; k < cd.rank(); ++k) cw += (k ? "," : std::string()) + rep.coweight[k].to_string();
    cw += "]";
    if (o.format == "json") {
        json jout;
        jout["tool_version"] = kToolVersion;
        jout["config"] = config_json(o, "shifted-char");
        jout["highest_lweight"] = term_json(rep.psi);
        jout["series"] = poly_json(rep.series.body());
        jout["character"] = poly_json(rep.character.body());
        jout["coweight"] = cw;
        std::cout << jout.dump(2) << "\n";
    } else {
        std::cout << "highest l-weight: " << rep.psi.to_display() << "\n";
        std::cout << "coweight: " << cw << "\n";
        std::cout << "q-character tail E_e(Q) * bchi = " << rep.series.body().to_display()
                  << " + O(ht " << o.height + 1 << ")\n";
        std::cout << "character bchi = " << rep.character.body().to_display() << " + O(ht "
                  << o.height + 1 << ")\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Weyl-operator calculus on q-character rings"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string chiWeight = "w1";
    std::string branch = "e";
    std::string alphabet = "both";
    int window = 8;
    int maxLength = -1;

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--type", o.type, "Cartan type label, e.g. A2, B2, G2, A1xA1");
        sub->add_option("--matrix", o.matrixFile, "JSON file with an explicit Cartan matrix");
        sub->add_option("--height", o.height, "truncation height");
        sub->add_option("--node", o.node, "node index (1-based)");
        sub->add_option("--shift", o.shift, "spectral exponent shift r (a = q^r)");
        sub->add_option("--format", o.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--jobs", o.jobs, "parallel verification workers");
        sub->add_option("--seed", o.seed, "seed recorded in the run config");
    };

    CLI::App* orbit = app.add_subcommand("orbit", "extremal Y- and Psi-monomials per coset");
    addCommon(orbit);

    CLI::App* chi = app.add_subcommand("chi", "factored and expanded chi_{w(omega_i)}");
    addCommon(chi);
    chi->add_option("--weight", chiWeight, "orbit weight: w1, -w2, or coordinates c1,c2");

    CLI::App* sigma = app.add_subcommand("sigma", "the two sigma-series branches");
    addCommon(sigma);
    sigma->add_option("--branch", branch, "e or si")->check(CLI::IsMember({"e", "si"}));

    CLI::App* theta = app.add_subcommand("theta", "E_e(Theta_w(Y_{i,q^r}))");
    addCommon(theta);
    theta->add_option("--weyl", o.weyl, "word, e.g. \"s1 s2 s1\"");

    CLI::App* qs = app.add_subcommand("q-series", "the normalized Q-series and e_e(chi)*Q");
    addCommon(qs);
    qs->add_option("--weyl", o.weyl, "word, e.g. \"s2 s1\"");

    CLI::App* qq = app.add_subcommand("qq-verify", "verify the extended QQ-system");
    addCommon(qq);
    CLI::Option* qqLen =
        qq->add_option("--max-length", maxLength, "restrict to l(w) <= L (-1 = all)");

    CLI::App* tq = app.add_subcommand("tq-verify", "verify the extended TQ-relations");
    addCommon(tq);
    tq->add_option("--max-length", maxLength, "restrict to l(w) <= L (-1 = all)");

    CLI::App* braid = app.add_subcommand("braid-check", "verify braid relations for T and T'");
    addCommon(braid);
    braid->add_option("--alphabet", alphabet, "Y, Yprime, or both")
        ->check(CLI::IsMember({"Y", "Yprime", "both"}));
    braid->add_option("--window", window, "spectral window half-width");

    CLI::App* sh = app.add_subcommand("shifted-char", "shifted q-character report");
    addCommon(sh);
    sh->add_option("--weyl", o.weyl, "word, e.g. \"s2 s1\"");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (orbit->parsed()) return cmd_orbit(o);
        if (chi->parsed()) return cmd_chi(o, chiWeight);
        if (sigma->parsed()) return cmd_sigma(o, branch);
        if (theta->parsed()) return cmd_theta(o);
        if (qs->parsed()) return cmd_qseries(o);
        if (qq->parsed()) {
            CartanData cd = load_cartan(o);
            // G2 case counts grow steeply; default to l(w) <= 3 there and
            // leave the full group behind an explicit --max-length -1
            if (qqLen->count() == 0 && cd.rank() == 2 && cd.lacing() == 3) maxLength = 3;
            QCache cache;
            return emit_report(o, "qq-verify", verify_QQ(cd, o.height, maxLength, &cache, o.jobs));
        }
        if (tq->parsed()) {
            CartanData cd = load_cartan(o);
            QCache cache;
            return emit_report(o, "tq-verify", verify_TQ(cd, o.height, maxLength, &cache, o.jobs));
        }
        if (braid->parsed()) return cmd_braid(o, alphabet, window);
        if (sh->parsed()) return cmd_shifted(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
