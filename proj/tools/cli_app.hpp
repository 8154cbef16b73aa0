#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irrkatz/corpus.hpp"

namespace irrkatz::cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Params parse_params(const std::vector<std::string>& kv) {
    Params p;
    for (const auto& s : kv) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw InvalidInput("--param expects name=rat, got '" + s + "'");
        p[s.substr(0, eq)] = Rat::parse(s.substr(eq + 1));
    }
    return p;
}

/* corpus defaults at seed 0, seeded random rationals otherwise; --param overrides either */
inline Params entry_params(const CorpusEntry& e, std::uint64_t seed, const Params& overrides) {
    Params p = seed == 0 ? e.defaults : random_params(e, seed);
    for (const auto& [k, v] : overrides) p[k] = v;
    return p;
}

inline void print_table(const FormalData& F, std::ostream& os) {
    os << "rank " << F.rank() << ", " << F.points.size() << " singular point(s)\n";
    for (const auto& p : F.points) {
        for (const auto& f : p.factors) {
            os << "  " << std::left << std::setw(6) << p.location.str() << std::setw(22) << ("w=" + f.w.str());
            for (const auto& c : f.spectral.chains) os << " (" << c.exponent.str() << "; " << c.multiplicity << ")";
            os << '\n';
        }
    }
}

struct Shared {
    std::string op, file, formal, example, only, dot;
    std::vector<std::string> params;
    std::uint64_t seed = 0;
    bool run = false, gram = false, json = false;
};

inline DiffOperator load_operator(const Shared& s) {
    Params over = parse_params(s.params);
    if (!s.example.empty()) {
        const auto& e = corpus_entry(s.example);
        return e.instantiate(entry_params(e, s.seed, over));
    }
    if (!s.op.empty()) return parse_operator(s.op, over);
    if (!s.file.empty()) return parse_operator(read_file(s.file), over);
    throw InvalidInput("no operator given (use --op, --file or --example)");
}

inline FormalData load_formal(const Shared& s) {
    if (!s.formal.empty()) return formal_from_json(read_file(s.formal));
    return extract_formal_data(load_operator(s));
}

inline int cmd_analyze(const Shared& s, std::ostream& out, std::ostream& err) {
    FormalData F = extract_formal_data(load_operator(s));
    out << to_json(F) << '\n';
    print_table(F, err);
    return 0;
}

inline int cmd_diagram(const Shared& s, std::ostream& out, std::ostream& err) {
    FormalData F = load_formal(s);
    BasisPtr B = build_basis(make_shape(LatticeShape::from_formal(F)));
    Diagram d = classify_diagram(*B);
    if (s.json) {
        nlohmann::ordered_json o;
        o["label"] = d.label;
        nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
        for (int k = 0; k < B->size(); ++k) nodes.push_back(B->node(k).label());
        o["nodes"] = nodes;
        o["gram"] = B->gram();
        out << o.dump() << '\n';
    } else {
        out << d.label << '\n';
    }
    if (s.gram) out << cartan_ascii(*B);
    if (!s.dot.empty()) {
        if (s.dot == "-") {
            out << d.dot;
        } else {
            std::ofstream f(s.dot);
            if (!f) throw InvalidInput("cannot write " + s.dot);
            f << d.dot;
            err << "wrote " << s.dot << '\n';
        }
    }
    return 0;
}

inline int cmd_reduce(const Shared& s, std::ostream& out, std::ostream& err) {
    bool has_op = !s.op.empty() || !s.file.empty() || !s.example.empty();
    if (!has_op) {
        Transcript tr = reduce(multiplicities(load_formal(s)));
        out << tr.to_jsonl();
        if (!tr.idx_consistent()) err << "warning: " << verdict_name(tr.verdict) << " with idx " << tr.input_idx << '\n';
        return 0;
    }
    DiffOperator P = load_operator(s);
    if (!s.formal.empty()) {
        // the operator must realize the given formal data
        std::string diff = formal_mismatch(formal_from_json(read_file(s.formal)), extract_formal_data(P));
        if (!diff.empty()) throw PredictionMismatch("operator does not match --formal: " + diff);
    }
    OperatorReduction r = reduce_operator(P);
    out << r.transcript.to_jsonl();
    out << nlohmann::ordered_json{{"final_operator", r.final_operator.str()}}.dump() << '\n';
    return 0;
}

inline int cmd_fuchs(const Shared& s, std::ostream& out, std::ostream&) {
    ParamExpr d = fuchs_defect(load_formal(s));
    out << d.str() << '\n';
    return d.is_zero() ? 0 : 1;
}

namespace detail {

/* one corpus entry against its expected fields; empty on success */
inline std::vector<std::string> run_entry(const CorpusEntry& e, std::uint64_t seed, const Params& over,
                                          bool show_dot, std::ostream& log) {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) bad.push_back(what);
    };
    Params p = entry_params(e, seed, over);
    DiffOperator P = e.instantiate(p);
    FormalData F = extract_formal_data(P);
    check(formal_mismatch(e.formal(p).substitute(p), F).empty(), "formal data");
    check(formal_from_json(to_json(F)) == F, "JSON round trip");
    check(fuchs_defect(F).is_zero(), "Fuchs relation");
    ShapePtr shape = make_shape(LatticeShape::from_formal(F));
    BasisPtr B = build_basis(shape);
    Diagram d = classify_diagram(*B);
    LatticeVector m = multiplicities(F, shape);
    check(d.label == e.label, "diagram " + d.label + " (expected " + e.label + ")");
    check(m.str() == e.m_vector, "m " + m.str() + " (expected " + e.m_vector + ")");
    long long ix = idx(B, m);
    check(ix == e.idx, "idx " + std::to_string(ix));
    Transcript tr = reduce(m);
    check(tr.verdict == e.verdict, "verdict " + verdict_name(tr.verdict));

    // operator level, fresh instances when a resonance is hit
    std::string op_note;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        Params q = attempt == 0 ? p : entry_params(e, seed + 1000 * attempt + 1, over);
        try {
            OperatorReduction r = reduce_operator(e.instantiate(q));
            int want = e.verdict == Verdict::RealRoot ? 1 : F.rank();
            check(r.final_operator.rank() == want, "terminal rank " + std::to_string(r.final_operator.rank()));
            op_note = "final rank " + std::to_string(r.final_operator.rank());
            break;
        } catch (const AssumptionViolated& ex) {
            op_note = ex.what();
            if (attempt == 3) bad.push_back("operator reduction: " + op_note);
        }
    }
    log << e.name << ": " << d.label << ", m=" << m.str() << ", idx=" << ix << ", " << verdict_name(tr.verdict)
        << " in " << tr.twisted_euler_steps() << " twisted Euler step(s), " << op_note << '\n';
    if (show_dot) log << d.dot;
    return bad;
}

} // namespace detail

inline int cmd_examples(const Shared& s, std::ostream& out, std::ostream& err) {
    if (!s.run) {
        for (const auto& e : corpus()) {
            if (!s.only.empty() && e.name != s.only) continue;
            out << std::left << std::setw(7) << e.name << std::setw(15) << e.label << std::setw(18) << e.m_vector
                << std::setw(4) << e.idx << verdict_name(e.verdict) << "\n        " << e.op_template << '\n';
        }
        return 0;
    }
    Params over = parse_params(s.params);
    int failures = 0;
    bool any = false;
    for (const auto& e : corpus()) {
        if (!s.only.empty() && e.name != s.only) continue;
        any = true;
        std::vector<std::string> bad;
        try {
            bad = detail::run_entry(e, s.seed, over, !s.only.empty(), out);
        } catch (const Error& ex) {
            bad.push_back(ex.what());
        }
        for (const auto& b : bad) err << e.name << " MISMATCH: " << b << '\n';
        failures += !bad.empty();
    }
    if (!any) throw InvalidInput("no corpus entry named '" + s.only + "'");
    out << (failures ? std::to_string(failures) + " entr" + (failures == 1 ? "y" : "ies") + " failed" : "all entries match")
        << '\n';
    return failures ? 1 : 0;
}

inline int exit_code(const std::exception& e) {
    if (dynamic_cast<const AssumptionViolated*>(&e)) return 5;
    if (dynamic_cast<const OshimaCheckFailed*>(&e) || dynamic_cast<const PredictionMismatch*>(&e)) return 4;
    if (dynamic_cast<const Unsupported*>(&e)) return 3;
    if (dynamic_cast<const InvalidInput*>(&e)) return 2;
    return 1;
}

} // namespace irrkatz::cli

namespace irrkatz {

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace cli;
    CLI::App app{"irrkatz: spectral data, root lattices and Katz-style reduction for linear ODE operators"};
    app.require_subcommand(1);
    Shared s;

    auto operator_opts = [&](CLI::App* c) {
        c->add_option("--op,--operator", s.op, "operator in x and D, e.g. \"x*D - 5\"");
        c->add_option("--file", s.file, "file holding the operator text");
        c->add_option("--example", s.example, "corpus entry name");
        c->add_option("--param", s.params, "bind a parameter, name=rat (repeatable)");
        c->add_option("--seed", s.seed, "0 uses corpus defaults, otherwise random generic parameters");
    };

    auto* analyze = app.add_subcommand("analyze", "extract formal data (JSON on stdout, table on stderr)");
    operator_opts(analyze);
    auto* diagram = app.add_subcommand("diagram", "Dynkin diagram label, DOT and Cartan matrix");
    operator_opts(diagram);
    diagram->add_option("--formal", s.formal, "formal data JSON file");
    diagram->add_option("--dot", s.dot, "write DOT here ('-' for stdout)");
    diagram->add_flag("--gram", s.gram, "print the Cartan matrix");
    diagram->add_flag("--json", s.json, "label, nodes and gram as JSON");
    auto* reduce_cmd = app.add_subcommand("reduce", "reduction transcript as JSON lines");
    operator_opts(reduce_cmd);
    reduce_cmd->add_option("--formal", s.formal, "formal data JSON file");
    auto* fuchs = app.add_subcommand("fuchs", "Fuchs relation defect; exit 1 when nonzero");
    operator_opts(fuchs);
    fuchs->add_option("--formal", s.formal, "formal data JSON file");
    auto* examples = app.add_subcommand("examples", "list or run the built-in corpus");
    examples->add_flag("--run", s.run, "run every entry and compare with the expected fields");
    examples->add_option("--only", s.only, "restrict to one entry");
    examples->add_option("--param", s.params, "bind a parameter, name=rat (repeatable)");
    examples->add_option("--seed", s.seed, "0 uses corpus defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*analyze) return cmd_analyze(s, out, err);
        if (*diagram) return cmd_diagram(s, out, err);
        if (*reduce_cmd) return cmd_reduce(s, out, err);
        if (*fuchs) return cmd_fuchs(s, out, err);
        return cmd_examples(s, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e);
    }
}

} // namespace irrkatz
