#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mlsspf/errors.hpp"
#include "mlsspf/json_io.hpp"
#include "mlsspf/solver.hpp"

namespace mlsspf::cli {

namespace {

using json::Json;

struct InputError : Error {
  using Error::Error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Formula read_formula(const std::string& path) { return parse(slurp(path)); }

Assignment read_model(const std::string& path, const Formula& phi) {
  Assignment m = json::to_assignment(read_json(path));
  for (const auto& v : phi.vars())
    if (!m.contains(v)) throw UnboundVariable(v);
  return m;
}

struct Options {
  std::string formula, model, cert, process, out;
  std::string positional;
  std::size_t rounds = 1;
  SearchBudget budget;
};

class Emitter {
 public:
  Emitter(std::ostream& out, const std::string& path) : out_(out), path_(path) {}

  void json(const Json& j) const {
    if (path_.empty()) {
      out_ << j.dump(2) << '\n';
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw InputError("cannot write " + path_);
    f << j.dump(2) << '\n';
  }
  std::ostream& text() const { return out_; }

 private:
  std::ostream& out_;
  const std::string& path_;
};

int print_report(const Emitter& em, const Report& r) {
  em.json(json::from_report(r));
  return r.ok() ? kPass : kFail;
}

std::string literal_table(const Formula& phi, const SatisfactionReport& sr) {
  std::ostringstream s;
  std::size_t w = 7;
  for (const auto& l : phi.literals()) w = std::max(w, l.render().size());
  s << std::left << std::setw(static_cast<int>(w)) << "literal" << "  value\n";
  for (std::size_t i = 0; i < sr.values.size(); ++i)
    s << std::setw(static_cast<int>(w)) << phi.literals()[i].render() << "  " << (sr.values[i] ? "true" : "false")
      << '\n';
  s << "verdict: " << (sr.verdict ? "true" : "false") << '\n';
  return s.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Satisfiability checking for MLSSPF formulas"};
  app.require_subcommand(1);
  Options o;
  auto budget_flags = [&](CLI::App* c) {
    c->add_option("--max-rank", o.budget.max_rank, "Universe members have rank below this");
    c->add_option("--max-universe", o.budget.max_universe, "Largest universe size");
    c->add_option("--max-cycle-len", o.budget.max_cycle_len, "Longest pumping cycle searched");
    c->add_option("--limit-pow", o.budget.pow_limit, "Largest powerset materialised");
    c->add_flag("--strict-three", o.budget.strict_three, "Require three candidates on every pump step");
  };
  auto out_flag = [&](CLI::App* c) { c->add_option("--json", o.out, "Write JSON output to this file"); };

  auto* parse_cmd = app.add_subcommand("parse", "Parse a formula and print its normal rendering");
  parse_cmd->add_option("file", o.positional)->required();
  out_flag(parse_cmd);

  auto* check = app.add_subcommand("check-model", "Evaluate every literal under a model");
  check->add_option("-f,--formula", o.formula)->required();
  check->add_option("-m,--model", o.model)->required();
  out_flag(check);

  auto* venn = app.add_subcommand("venn", "Venn partition of a model");
  venn->add_option("-f,--formula", o.formula)->required();
  venn->add_option("-m,--model", o.model)->required();
  out_flag(venn);

  auto* board = app.add_subcommand("board", "Colored board of a formula under a model");
  board->add_option("-f,--formula", o.formula)->required();
  board->add_option("-m,--model", o.model)->required();
  out_flag(board);

  auto* process = app.add_subcommand("process", "Formative processes");
  process->require_subcommand(1);
  auto* synth = process->add_subcommand("synth", "Synthesize a process ending in the Venn partition");
  synth->add_option("-f,--formula", o.formula)->required();
  synth->add_option("-m,--model", o.model)->required();
  out_flag(synth);
  auto* validate = process->add_subcommand("validate", "Validate a process");
  validate->add_option("-p,--process", o.process)->required();
  out_flag(validate);

  auto* pump = app.add_subcommand("pump", "Pump a certificate's event");
  pump->add_option("-c,--cert", o.cert)->required();
  pump->add_option("--rounds", o.rounds);
  out_flag(pump);

  auto* witness = app.add_subcommand("witness", "Certify a model as a witness");
  witness->add_option("-f,--formula", o.formula)->required();
  witness->add_option("-m,--model", o.model)->required();
  budget_flags(witness);
  out_flag(witness);

  auto* decide_cmd = app.add_subcommand("decide", "Bounded search for a model or witness");
  decide_cmd->add_option("file", o.positional)->required();
  budget_flags(decide_cmd);
  out_flag(decide_cmd);

  auto* verify = app.add_subcommand("verify", "Re-check a certificate");
  verify->add_option("cert", o.positional)->required();
  out_flag(verify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  const Emitter em(out, o.out);
  try {
    if (*parse_cmd) {
      const Formula phi = read_formula(o.positional);
      if (o.out.empty()) {
        em.text() << phi.render() << '\n';
      } else {
        Json lits = Json::array();
        for (const auto& l : phi.literals()) lits.push_back({{"kind", kind_name(l.kind)}, {"vars", l.vars}});
        em.json({{"formula", phi.render()}, {"vars", phi.vars()}, {"literals", lits}});
      }
      return kPass;
    }
    if (*check) {
      const Formula phi = read_formula(o.formula);
      const SatisfactionReport sr = eval(phi, read_model(o.model, phi));
      if (o.out.empty()) {
        em.text() << literal_table(phi, sr);
      } else {
        Json t = Json::array();
        for (std::size_t i = 0; i < sr.values.size(); ++i)
          t.push_back({{"literal", phi.literals()[i].render()}, {"value", static_cast<bool>(sr.values[i])}});
        em.json({{"literals", t}, {"verdict", sr.verdict}});
      }
      return sr.verdict ? kPass : kFail;
    }
    if (*venn) {
      const Formula phi = read_formula(o.formula);
      const auto [sigma, im] = venn_partition(read_model(o.model, phi));
      Json ij = Json::object();
      for (const auto& [v, ps] : im) ij[v] = json::from_places(ps);
      em.json({{"places", json::from_partition(sigma)}, {"im", ij}});
      return kPass;
    }
    if (*board) {
      const Formula phi = read_formula(o.formula);
      const Assignment m = read_model(o.model, phi);
      const CanonicalBoard cb = canonical_board(phi, m);
      em.json(json::from_board(cb.board));
      return kPass;
    }
    if (*synth) {
      const Formula phi = read_formula(o.formula);
      const CanonicalBoard cb = canonical_board(phi, read_model(o.model, phi));
      em.json(json::from_process(synthesize_process(cb.sigma)));
      return kPass;
    }
    if (*validate) return print_report(em, validate_process(json::to_process(read_json(o.process))));
    if (*pump) {
      const Json cj = read_json(o.cert);
      const Report vr = verify_certificate(cj);
      if (!vr.ok()) throw InputError("invalid certificate: " + vr.first_failure());
      const WitnessCertificate cert = json::to_certificate(cj);
      Json res = cj;
      res["pumped"] = pump_certificate(cert, o.rounds);
      em.json(res);
      return res["pumped"]["report"]["ok"].get<bool>() ? kPass : kFail;
    }
    if (*witness) {
      const Formula phi = read_formula(o.formula);
      const Assignment m = read_model(o.model, phi);
      try {
        em.json(json::from_certificate(certify_witness(phi, m, witness_options(o.budget))));
        return kPass;
      } catch (const NotAWitness& e) {
        err << "not a witness: " << e.what() << '\n';
      } catch (const NoEvent& e) {
        err << "no pumping event: " << e.what() << '\n';
      } catch (const NoClosedCover& e) {
        err << "no closed cover: " << e.what() << '\n';
      } catch (const CoverMissesVariable& e) {
        err << "cover misses a variable: " << e.what() << '\n';
      }
      return kFail;
    }
    if (*decide_cmd) {
      const Formula phi = read_formula(o.positional);
      const DecideResult r = decide(phi, o.budget);
      em.json(from_decide(r));
      switch (r.verdict) {
        case Verdict::SatWitnessed:
        case Verdict::SatModel: return kPass;
        case Verdict::UnsatWithinBudget: return kFail;
        case Verdict::Unknown: return kUnknown;
      }
    }
    if (*verify) return print_report(em, verify_certificate(read_json(o.positional)));
  } catch (const InputError& e) {
    err << e.what() << '\n';
    return kInputError;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return kInputError;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kInputError;
  } catch (const UnboundVariable& e) {
    err << "unbound variable: " << e.what() << '\n';
    return kInputError;
  } catch (const NotTransitive& e) {
    err << "not transitive: " << e.what() << '\n';
    return kInputError;
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << '\n';
    return kUnknown;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kFail;
  }
  return kInputError;
}

}  // namespace mlsspf::cli
