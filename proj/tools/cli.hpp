#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringsieve/catalog.hpp"
#include "ringsieve/io.hpp"
#include "ringsieve/local.hpp"
#include "ringsieve/order.hpp"
#include "ringsieve/rogers.hpp"
#include "ringsieve/sieve.hpp"

namespace ringsieve::cli {

enum class Format { Human, Machine };

struct RunConfig {
  std::size_t carrier_bound = 4096;
  std::uint64_t tuple_cap = 10'000'000;
  std::int64_t probe_bound = 64;
  unsigned worker_count = 1;
  Format output_format = Format::Human;
};

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kViolation = 2;

using Record = std::vector<std::pair<std::string, std::string>>;

/// Human: one `key=value` per line, records separated by a blank line.
/// Machine: one record per line, pairs separated by single spaces.
class Printer {
 public:
  Printer(std::ostream& out, Format f) : out_(out), format_(f) {}

  void operator()(const Record& r) {
    if (format_ == Format::Machine) {
      for (std::size_t i = 0; i < r.size(); ++i) out_ << (i ? " " : "") << r[i].first << '=' << r[i].second;
      out_ << '\n';
      return;
    }
    if (records_++) out_ << '\n';
    for (const auto& [k, v] : r) out_ << k << '=' << v << '\n';
  }

 private:
  std::ostream& out_;
  Format format_;
  std::size_t records_ = 0;
};

inline std::string yes_no(bool b) { return b ? "true" : "false"; }
inline std::string num(std::uint64_t n) { return std::to_string(n); }

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct LoadedRing {
  RingPtr ring;
  std::vector<std::string> file_ideals;
};

inline RingConfig ring_config(const RunConfig& rc) {
  RingConfig c;
  c.carrier_bound = rc.carrier_bound;
  return c;
}

inline LoadedRing load_ring(const std::string& source, const RunConfig& rc) {
  if (source.rfind("catalog:", 0) == 0) return {catalog::ring(source.substr(8), ring_config(rc)), {}};
  io::RingFile f = io::read_ring_file(source);
  return {validate_ring(f.presentation, ring_config(rc)), std::move(f.ideals)};
}

struct LoadedOrder {
  Order order;
  std::vector<std::string> file_ideals;
};

inline LoadedOrder load_order(const std::string& source) {
  if (source.rfind("catalog:", 0) == 0) return {catalog::order(source.substr(8)), {}};
  io::OrderFile f = io::read_order_file(source);
  return {Order::validate(f.presentation), std::move(f.ideals)};
}

inline std::vector<Ideal> ring_ideals(const LoadedRing& lr, const std::vector<std::string>& args) {
  const auto& texts = args.empty() ? lr.file_ideals : args;
  if (texts.empty()) throw Error(ErrorKind::InvalidInput, "no ideals given; use --ideal");
  std::vector<Ideal> out;
  for (const auto& t : texts)
    out.push_back(ideal_generated(lr.ring, io::to_elements(*lr.ring, io::parse_int_generators(t, lr.ring->rank()))));
  return out;
}

inline Record ideal_record(const FiniteRing& r, std::size_t j, const Ideal& I) {
  const std::vector<ElementId> gens = I.is_zero() ? std::vector<ElementId>{r.zero()} : I.generators();
  return {{"ideal", num(j + 1)}, {"size", num(I.size())}, {"generators", io::format_elements(r, gens)}};
}

inline Record ring_record(const std::string& source, const FiniteRing& r) {
  return {{"ring", source},
          {"order", num(r.size())},
          {"rank", num(r.rank())},
          {"invariant_factors", join(r.invariant_factors())}};
}

inline int print_witness(Printer& print, const Witness& w) {
  const FiniteRing& r = *w.ring;
  for (std::size_t j = 0; j < w.ideals.size(); ++j) print(ideal_record(r, j, w.ideals[j]));
  print({{"shifts", io::format_elements(r, w.shifts)},
         {"union_shifted", num(w.union_shifted)},
         {"union_baseline", num(w.union_baseline)},
         {"satisfied", "false"}});
  return kViolation;
}

inline int cmd_validate(const std::string& src, const RunConfig& rc, Printer& print) {
  const LoadedRing lr = load_ring(src, rc);
  Record rec = ring_record(src, *lr.ring);
  rec.emplace_back("valid", "true");
  print(rec);
  return kOk;
}

inline int cmd_ideals(const std::string& src, const RunConfig& rc, Printer& print) {
  const LoadedRing lr = load_ring(src, rc);
  const auto ideals = all_ideals(lr.ring);
  Record head = ring_record(src, *lr.ring);
  head.emplace_back("ideals", num(ideals.size()));
  head.emplace_back("chain", yes_no(is_chain(ideals)));
  print(head);
  for (std::size_t j = 0; j < ideals.size(); ++j) print(ideal_record(*lr.ring, j, ideals[j]));
  return kOk;
}

inline int cmd_classify(const std::string& src, const RunConfig& rc, Printer& print) {
  const LoadedRing lr = load_ring(src, rc);
  const LocalDecomposition d = local_decomposition(lr.ring);
  const ClassificationVerdict v = classify(d);
  Record head = ring_record(src, *lr.ring);
  head.emplace_back("factors", num(d.factors.size()));
  head.emplace_back("chain_local_product", yes_no(v.is_chain_local_product));
  if (v.offending_factor) head.emplace_back("offending_factor", num(*v.offending_factor + 1));
  print(head);
  for (const auto& f : v.per_factor)
    print({{"factor", num(f.index + 1)},
           {"idempotent", lr.ring->format(d.idempotents[f.index])},
           {"order", num(f.order)},
           {"local", yes_no(f.is_local)},
           {"chain", yes_no(f.is_chain)},
           {"ideals", num(f.ideal_count)}});
  return v.is_chain_local_product ? kOk : kViolation;
}

inline int cmd_rogers_check(const std::string& src, const std::vector<std::string>& ideal_args,
                            const std::optional<std::string>& shifts, const RunConfig& rc, Printer& print) {
  const LoadedRing lr = load_ring(src, rc);
  const auto ideals = ring_ideals(lr, ideal_args);
  RogersReport rep;
  if (shifts) {
    const auto s = io::to_elements(*lr.ring, io::parse_int_generators(*shifts, lr.ring->rank()));
    if (s.size() != ideals.size()) throw Error(ErrorKind::InvalidInput, "need exactly one shift per ideal");
    rep = rogers_verify(lr.ring, ideals, s);
  } else {
    RogersOptions o;
    o.tuple_cap = rc.tuple_cap;
    o.workers = rc.worker_count;
    rep = rogers_check(lr.ring, ideals, o);
  }
  for (std::size_t j = 0; j < ideals.size(); ++j) print(ideal_record(*lr.ring, j, ideals[j]));
  print({{"mode", shifts ? "verify" : "search"},
         {"baseline", num(rep.baseline)},
         {"minimum", num(rep.minimum)},
         {"shifts", io::format_elements(*lr.ring, rep.witness_shifts)},
         {"tuples", num(rep.tuples_examined)},
         {"satisfied", yes_no(rep.satisfied)}});
  return rep.satisfied ? kOk : kViolation;
}

inline int cmd_counterexample(const std::string& src, const RunConfig& rc, Printer& print) {
  const LoadedRing lr = load_ring(src, rc);
  if (classify(lr.ring).is_chain_local_product) {
    print({{"ring", src}, {"chain_local_product", "true"}, {"counterexample", "none"}});
    return kOk;
  }
  return print_witness(print, counterexample(lr.ring));
}

inline int cmd_theorem2(const std::string& src, std::size_t arity, bool exhaustive, const RunConfig& rc,
                        Printer& print, std::ostream& err) {
  const LoadedRing lr = load_ring(src, rc);
  const ClassificationVerdict v = classify(lr.ring);
  Theorem2Options o;
  o.arity = arity;
  o.exhaustive = exhaustive;
  o.workers = rc.worker_count;
  o.tuple_cap = rc.tuple_cap;
  const Theorem2Result t = theorem2_verify(lr.ring, o);
  const bool agree = t.holds == v.is_chain_local_product;
  Record rec = ring_record(src, *lr.ring);
  rec.insert(rec.end(), {{"ideals", num(t.ideal_count)},
                         {"arity", num(arity)},
                         {"method", exhaustive || arity != 3 ? "exhaustive" : "lattice"},
                         {"sets_examined", num(t.sets_examined)},
                         {"condition_holds", yes_no(t.holds)},
                         {"chain_local_product", yes_no(v.is_chain_local_product)},
                         {"agree", yes_no(agree)}});
  if (t.first_violation) {
    std::vector<std::int64_t> pos;
    for (auto p : *t.first_violation) pos.push_back(static_cast<std::int64_t>(p + 1));
    rec.emplace_back("first_violation", join(pos));
  }
  print(rec);
  if (!agree) {
    err << "error: condition and classification disagree\n";
    return kFailure;
  }
  if (t.holds) return kOk;
  return print_witness(print, counterexample(lr.ring));
}

inline OrderCheckOptions order_options(const RunConfig& rc) {
  OrderCheckOptions o;
  o.ring = ring_config(rc);
  o.rogers.tuple_cap = rc.tuple_cap;
  o.rogers.workers = rc.worker_count;
  return o;
}

inline int cmd_order_check(const std::string& src, const std::vector<std::string>& ideal_args,
                           const std::optional<std::string>& shifts, const RunConfig& rc, Printer& print) {
  const LoadedOrder lo = load_order(src);
  const auto& texts = ideal_args.empty() ? lo.file_ideals : ideal_args;
  if (texts.empty()) throw Error(ErrorKind::InvalidInput, "no ideals given; use --ideal");
  const std::size_t n = lo.order.rank();
  std::vector<std::vector<IntVector>> gens;
  for (const auto& t : texts) gens.push_back(io::parse_order_generators(t, n));
  std::optional<std::vector<IntVector>> s;
  if (shifts) s = io::parse_order_generators(*shifts, n);
  const OrderRogersReport r = rogers_check_order(lo.order, gens, order_options(rc), s);
  for (std::size_t j = 0; j < r.ideals.size(); ++j)
    print({{"ideal", num(j + 1)},
           {"basis", io::format_lattice(r.ideals[j])},
           {"index", r.ideals[j].index().get_str()},
           {"quotient_size", num(r.report.ideals[j].size())}});
  std::string lifted;
  for (std::size_t j = 0; j < r.shifts.size(); ++j) lifted += (j ? ";" : "") + io::format_vector(r.shifts[j]);
  print({{"mode", shifts ? "verify" : "search"},
         {"meet", io::format_lattice(r.meet)},
         {"quotient_order", num(r.quotient.ring->size())},
         {"baseline", num(r.report.baseline)},
         {"minimum", num(r.report.minimum)},
         {"shifts", lifted},
         {"tuples", num(r.report.tuples_examined)},
         {"satisfied", yes_no(r.report.satisfied)}});
  return r.report.satisfied ? kOk : kViolation;
}

inline int cmd_probe(const std::string& src, std::int64_t bound, const RunConfig& rc, Printer& print) {
  const LoadedOrder lo = load_order(src);
  const auto w = nonmaximality_probe(lo.order, bound, order_options(rc));
  if (!w) {
    print({{"order", src}, {"bound", std::to_string(bound)}, {"witness", "none"}});
    return kOk;
  }
  for (std::size_t j = 0; j < w->ideals.size(); ++j) {
    std::string g;
    for (std::size_t i = 0; i < w->generators[j].size(); ++i)
      g += (i ? ";" : "") + io::format_vector(w->generators[j][i]);
    print({{"ideal", num(j + 1)}, {"generators", g}, {"basis", io::format_lattice(w->ideals[j])}});
  }
  std::string lifted;
  for (std::size_t j = 0; j < w->shifts.size(); ++j) lifted += (j ? ";" : "") + io::format_vector(w->shifts[j]);
  print({{"order", src},
         {"bound", std::to_string(bound)},
         {"conductor", std::to_string(w->conductor)},
         {"shifts", lifted},
         {"union_shifted", num(w->union_shifted)},
         {"union_baseline", num(w->union_baseline)},
         {"quotient_shifted", num(w->quotient_shifted)},
         {"quotient_baseline", num(w->quotient_baseline)},
         {"satisfied", "false"}});
  return kViolation;
}

inline Progression parse_progression(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "progression must look like a:q, got '" + text + "'");
  return Progression::make(io::detail::to_int64(text.substr(0, colon), "--prog: "),
                           io::detail::to_int64(text.substr(colon + 1), "--prog: "));
}

inline int cmd_sieve(const std::vector<std::string>& progs, Printer& print) {
  std::vector<Progression> ps;
  for (const auto& p : progs) ps.push_back(parse_progression(p));
  const DensityReport d = union_density(ps);
  print({{"density", d.density.str()}, {"residues", std::to_string(d.residues)}, {"period", std::to_string(d.period)}});
  return kOk;
}

inline int cmd_sieve_min(const std::string& moduli_text, const RunConfig& rc, Printer& print) {
  std::vector<std::int64_t> moduli;
  for (const auto& t : io::detail::tokens(moduli_text)) moduli.push_back(io::detail::to_int64(t, "--moduli: "));
  SieveConfig cfg;
  cfg.tuple_cap = rc.tuple_cap;
  const DensityReport d = rogers_min_density(moduli, cfg);
  const bool holds = d.density <= d.min_density;
  print({{"min", d.min_density.str()},
         {"aligned", d.density.str()},
         {"period", std::to_string(d.period)},
         {"shifts", join(d.witness_shifts)},
         {"tuples", num(d.tuples_examined)},
         {"satisfied", yes_no(holds)}});
  return holds ? kOk : kViolation;
}

/// Runs one command line; args excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide and witness the coset-union sieving condition for finite rings and orders", "ringsieve"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  std::string format = "human";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--workers", rc.worker_count, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--carrier-bound", rc.carrier_bound, "Maximum ring size")->check(CLI::PositiveNumber);
  app.add_option("--tuple-cap", rc.tuple_cap, "Maximum shift tuples per search")->check(CLI::PositiveNumber);

  std::string input;
  std::vector<std::string> ideal_args;
  std::optional<std::string> shifts;
  std::size_t arity = 3;
  bool exhaustive = false;
  std::vector<std::string> progs;
  std::string moduli;

  auto ring_cmd = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("ring", input, "Ring file or catalog:<name>")->required();
    return s;
  };
  auto* validate = ring_cmd("validate", "Validate a ring presentation");
  auto* ideals = ring_cmd("ideals", "List all ideals");
  auto* classify_cmd = ring_cmd("classify", "Decompose into local factors and test the chain condition");
  auto* rogers = ring_cmd("rogers-check", "Minimize the shifted coset union for given ideals");
  rogers->add_option("--ideal", ideal_args, "Ideal generators \"g; g\"");
  rogers->add_option("--shifts", shifts, "Evaluate only these shifts \"s; s\"");
  auto* cex = ring_cmd("counterexample", "Construct a violating ideal triple");
  auto* thm = ring_cmd("verify-theorem2", "Check the condition on all ideal multisets against the classification");
  thm->add_option("--arity", arity, "Multiset size")->check(CLI::PositiveNumber);
  thm->add_flag("--exhaustive", exhaustive, "Use the shift search for every multiset");

  auto* ocheck = app.add_subcommand("order-check", "Check the condition for ideals of an order");
  ocheck->add_option("order", input, "Order file or catalog:<name>")->required();
  ocheck->add_option("--ideal", ideal_args, "Ideal generators \"g; g\"");
  ocheck->add_option("--shifts", shifts, "Evaluate only these shifts");
  auto* probe = app.add_subcommand("probe", "Search quotients O/(n) for a violation");
  probe->add_option("order", input, "Order file or catalog:<name>")->required();
  probe->add_option("--bound", rc.probe_bound, "Largest n")->check(CLI::Range(2, 1'000'000));

  auto* sieve = app.add_subcommand("sieve", "Density of a union of progressions");
  sieve->add_option("--prog", progs, "Progression a:q")->required();
  auto* sieve_min = app.add_subcommand("sieve-min", "Minimum density over all shifts");
  sieve_min->add_option("--moduli", moduli, "Moduli q1,q2,...")->required();

  std::vector<std::string> argv_store{"ringsieve"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }
  rc.output_format = format == "machine" ? Format::Machine : Format::Human;
  Printer print(out, rc.output_format);

  try {
    if (validate->parsed()) return cmd_validate(input, rc, print);
    if (ideals->parsed()) return cmd_ideals(input, rc, print);
    if (classify_cmd->parsed()) return cmd_classify(input, rc, print);
    if (rogers->parsed()) return cmd_rogers_check(input, ideal_args, shifts, rc, print);
    if (cex->parsed()) return cmd_counterexample(input, rc, print);
    if (thm->parsed()) return cmd_theorem2(input, arity, exhaustive, rc, print, err);
    if (ocheck->parsed()) return cmd_order_check(input, ideal_args, shifts, rc, print);
    if (probe->parsed()) return cmd_probe(input, rc.probe_bound, rc, print);
    if (sieve->parsed()) return cmd_sieve(progs, print);
    if (sieve_min->parsed()) return cmd_sieve_min(moduli, rc, print);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace ringsieve::cli
