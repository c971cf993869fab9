#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mdsrepair/codes.hpp"
#include "mdsrepair/error.hpp"
#include "mdsrepair/nrc.hpp"
#include "mdsrepair/repair.hpp"
#include "mdsrepair/serialize.hpp"
#include "mdsrepair/simulate.hpp"

namespace mdsrepair::cli {
namespace {

namespace fs = std::filesystem;

// Raised for problems with files given on the command line; always exit 3.
struct InputError {
  std::string message;
};

struct Shared {
  std::string out;
  std::string format = "json";
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultBudget;
};

bool is_parameter_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonPrime:
    case ErrorKind::ReduciblePolynomial:
    case ErrorKind::DegreeMismatch:
    case ErrorKind::UnsupportedSize:
    case ErrorKind::EllTooSmall:
    case ErrorKind::Nondivisible:
    case ErrorKind::QuotientTooSmall:
    case ErrorKind::LengthOutOfRange:
    case ErrorKind::RExceedsQ:
    case ErrorKind::BadParameters:
    case ErrorKind::Overflow:
      return true;
    default:
      return false;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::BadParameters, "cannot write " + path.string());
  f << text;
}

template <class F>
auto load(const std::string& what, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw InputError{what + ": " + e.what()};
  } catch (const std::exception& e) {
    throw InputError{what + ": " + e.what()};
  }
}

LoadedCode load_code(const std::string& path) {
  const std::string text = read_file(path);
  return load(path, [&] { return code_from_json(parse_json(text)); });
}

RepairScheme load_scheme(const std::string& path, const Realization& re) {
  const std::string text = read_file(path);
  return load(path, [&] { return scheme_from_json(parse_json(text), re); });
}

void emit(const Shared& sh, std::ostream& out, const std::string& text) {
  if (sh.out.empty()) {
    out << text;
  } else {
    write_file(sh.out, text);
  }
}

bool want_table(const Shared& sh) { return sh.format == "table"; }

// Resolves "all" or a 1-based index to a 0-based node, or nullopt for all.
std::optional<std::size_t> parse_node(const std::string& text, std::size_t n) {
  if (text == "all") return std::nullopt;
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || v < 1 || v > n) {
    fail(ErrorKind::BadParameters, "--node must be 'all' or an index in 1.." + std::to_string(n));
  }
  return v - 1;
}

TowerPtr make_tower(std::uint32_t p, std::uint32_t m, std::uint32_t ell) {
  return std::make_shared<const FieldTower>(FieldTower::build(p, m, ell));
}

std::string table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) width[c] = head[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) os << "  ";
      os << std::setw(static_cast<int>(width[c])) << cells[c];
    }
    os << "\n";
  };
  line(head);
  for (const auto& row : rows) line(row);
  return os.str();
}

template <class T>
std::string str(const T& v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v ? "yes" : "no";
  } else if constexpr (std::is_same_v<T, Rational>) {
    return v.str();
  } else {
    return std::to_string(v);
  }
}

// ---- commands ----

struct ConstructArgs {
  std::uint32_t p = 0, m = 1, ell = 0;
  std::size_t r = 0, n = 0;
};

int cmd_construct(const ConstructArgs& a, const Shared& sh, std::ostream& out) {
  TowerPtr tower = make_tower(a.p, a.m, a.ell);
  NrcBundle bundle = build(validate_params(std::move(tower), a.r, a.n));

  const fs::path dir = sh.out.empty() ? fs::path(".") : fs::path(sh.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto code = dir / "code.json";
  const auto scheme = dir / "scheme.json";
  const auto prov = dir / "provenance.json";
  write_file(code, dump(code_to_json(bundle.realization, bundle.labels())));
  write_file(scheme, dump(scheme_to_json(bundle.scheme)));
  write_file(prov, dump(provenance_to_json(bundle)));

  const NodeMetrics metrics = evaluate_scheme(bundle.realization, bundle.scheme);
  if (want_table(sh)) {
    out << "wrote " << code.string() << "\n"
        << "wrote " << scheme.string() << "\n"
        << "wrote " << prov.string() << "\n"
        << "n=" << a.n << " beta_max=" << metrics.beta_max << " gamma_max=" << metrics.gamma_max
        << " im_bound=" << metrics.im_bound << " equality=" << str(metrics.equality) << "\n";
  } else {
    Json j;
    j["v"] = kSchemaVersion;
    j["files"] = {code.string(), scheme.string(), prov.string()};
    j["n"] = a.n;
    j["im_bound"] = metrics.im_bound;
    j["equality"] = metrics.equality;
    out << dump(j);
  }
  return kOk;
}

int cmd_check_mds(const std::string& path, const Shared& sh, std::ostream& out) {
  const LoadedCode code = load_code(path);
  const auto witness = check_mds(code.realization.skeleton(), sh.jobs);
  if (want_table(sh)) {
    std::string text = witness ? "not MDS; singular subset:" : "MDS: ok\n";
    if (witness) {
      for (std::size_t j : *witness) text += " " + std::to_string(j + 1);
      text += "\n";
    }
    emit(sh, out, text);
  } else {
    Json j;
    j["v"] = kSchemaVersion;
    j["mds"] = !witness;
    if (witness) {
      std::vector<std::size_t> one_based;
      for (std::size_t x : *witness) one_based.push_back(x + 1);
      j["witness"] = one_based;
    }
    emit(sh, out, dump(j));
  }
  return witness ? kVerdictFailure : kOk;
}

struct BoundsArgs {
  std::optional<std::uint64_t> q;
  std::optional<std::uint32_t> p;
  std::uint32_t m = 1;
  std::uint64_t ell = 0, r = 0, n = 0;
};

int cmd_bounds(const BoundsArgs& a, const Shared& sh, std::ostream& out) {
  std::uint64_t q = 0;
  if (a.q) {
    q = *a.q;
    if (!prime_power(q)) fail(ErrorKind::NonPrime, std::to_string(q) + " is not a prime power");
  } else if (a.p) {
    if (!is_prime(*a.p)) fail(ErrorKind::NonPrime, std::to_string(*a.p) + " is not prime");
    q = 1;
    for (std::uint32_t k = 0; k < a.m; ++k) {
      q *= *a.p;
      if (q > (1ULL << 32)) fail(ErrorKind::Overflow, "q too large");
    }
  } else {
    fail(ErrorKind::BadParameters, "give --q or --p");
  }
  const BoundsReport b = bounds_report(q, a.ell, a.r, a.n);
  if (want_table(sh)) {
    emit(sh, out,
         table({"q", "ell", "r", "n", "im_bound", "pc_bound", "length_max", "eq_min_n", "coverage", "r<=q"},
               {{str(b.q), str(b.ell), str(b.r), str(b.n), str(b.im_bound), str(b.pc_bound),
                 str(b.length_max), str(b.equality_min_length), str(b.coverage_fraction), str(b.r_le_q)}}));
  } else {
    Json j;
    j["v"] = kSchemaVersion;
    j.update(bounds_to_json(b));
    emit(sh, out, dump(j));
  }
  return kOk;
}

std::optional<BoundsReport> try_bounds(const Realization& re) {
  try {
    return bounds_report(re.field().order(), re.ell(), re.r(), re.n());
  } catch (const Error&) {
    return std::nullopt;
  }
}

int cmd_eval(const std::string& code_path, const std::string& scheme_path, bool expect_equality,
             const Shared& sh, std::ostream& out) {
  const LoadedCode code = load_code(code_path);
  const RepairScheme scheme = load_scheme(scheme_path, code.realization);
  const NodeMetrics m = evaluate_scheme(code.realization, scheme);
  const auto bounds = try_bounds(code.realization);

  bool any_gap = false;
  for (const NodeRow& r : m.rows) any_gap = any_gap || r.gap_beta > 0 || r.gap_gamma > 0;

  if (want_table(sh)) {
    std::vector<std::vector<std::string>> rows;
    for (const NodeRow& r : m.rows) {
      rows.push_back({str(r.node + 1), str(r.beta), str(r.gamma), str(m.im_bound),
                      str(std::max(r.gap_beta, r.gap_gamma))});
    }
    std::string text = table({"node", "beta", "gamma", "bound", "gap"}, rows);
    text += "beta avg " + m.beta_avg.str() + " max " + str(m.beta_max) + "; gamma avg " + m.gamma_avg.str() +
            " max " + str(m.gamma_max) + "; equality " + str(m.equality) + "\n";
    emit(sh, out, text);
  } else {
    emit(sh, out, dump(metrics_to_json(m, bounds ? &*bounds : nullptr)));
  }
  return expect_equality && any_gap ? kVerdictFailure : kOk;
}

struct BruteArgs {
  std::string code;
  std::string node = "all";
  std::string objective = "alpha";
  std::optional<std::uint64_t> begin, end;
};

int cmd_bruteforce(const BruteArgs& a, const Shared& sh, std::ostream& out) {
  const LoadedCode code = load_code(a.code);
  const Realization& re = code.realization;
  const auto node = parse_node(a.node, re.n());

  BruteForceOptions opts;
  opts.budget = sh.budget;
  opts.jobs = sh.jobs;
  if (a.begin || a.end) {
    const std::uint64_t total = RrefEnumerator(re.ell(), re.r() * re.ell(), re.field().order()).size();
    opts.range = EnumRange{a.begin.value_or(0), a.end.value_or(total)};
  }

  std::vector<BruteForceResult> results;
  for (std::size_t i = 0; i < re.n(); ++i) {
    if (node && *node != i) continue;
    results.push_back(a.objective == "alpha" ? alpha_bruteforce(re.skeleton(), i, opts)
                                             : lambda_bruteforce(re, i, opts));
  }

  if (want_table(sh)) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : results) {
      rows.push_back({str(r.node + 1), r.value ? str(*r.value) : "-", str(r.witness_index), str(r.scanned),
                      str(r.feasible), str(r.total)});
    }
    emit(sh, out, table({"node", a.objective, "witness_index", "scanned", "feasible", "total"}, rows));
  } else {
    Json j;
    j["v"] = kSchemaVersion;
    j["objective"] = a.objective;
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(bruteforce_to_json(r, a.objective.c_str()));
    j["results"] = std::move(arr);
    emit(sh, out, dump(j));
  }
  return kOk;
}

struct SimulateArgs {
  std::string code, scheme;
  std::string node = "all";
  std::uint64_t trials = 100;
};

int cmd_simulate(const SimulateArgs& a, const Shared& sh, std::ostream& out) {
  const LoadedCode code = load_code(a.code);
  const RepairScheme scheme = load_scheme(a.scheme, code.realization);
  const auto node = parse_node(a.node, code.realization.n());
  const CampaignReport rep = campaign(code.realization, scheme, a.trials, sh.seed, node, sh.jobs);
  const NodeMetrics m = evaluate_scheme(code.realization, scheme);

  if (want_table(sh)) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rep.nodes) {
      rows.push_back({str(r.node + 1), str(r.repairs), str(r.downloaded), str(r.beta), str(r.accessed),
                      str(r.gamma)});
    }
    std::string text = "seed " + str(rep.seed) + ", trials " + str(rep.trials) + "\n";
    text += table({"node", "repairs", "downloaded", "beta", "accessed", "gamma"}, rows);
    text += "failures " + str(rep.failures.size()) + "\n";
    emit(sh, out, text);
  } else {
    Json j = campaign_to_json(rep);
    j["im_bound"] = m.im_bound;
    j["equality"] = m.equality;
    emit(sh, out, dump(j));
  }
  return rep.failures.empty() ? kOk : kVerdictFailure;
}

struct SweepArgs {
  std::uint32_t p = 0, m = 1, ell = 0;
  std::size_t r = 0, n_min = 0, n_max = 0;
};

int cmd_sweep(const SweepArgs& a, const Shared& sh, std::ostream& out) {
  if (a.n_min > a.n_max) fail(ErrorKind::BadParameters, "--n-min exceeds --n-max");
  TowerPtr tower = make_tower(a.p, a.m, a.ell);
  for (std::size_t n = a.n_min; n <= a.n_max; ++n) validate_params(tower, a.r, n);

  bool ok = true;
  Json rows_json = Json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = a.n_min; n <= a.n_max; ++n) {
    const NrcBundle bundle = build(validate_params(tower, a.r, n));
    const bool mds = !check_mds(bundle.skeleton(), sh.jobs);
    const NodeMetrics m = evaluate_scheme(bundle.realization, bundle.scheme);
    const BoundsReport b = bounds_report(tower->q(), tower->ell(), a.r, n);
    ok = ok && mds && m.equality;
    Json row;
    row["n"] = n;
    row["mds"] = mds;
    row["beta_avg"] = rational_to_json(m.beta_avg);
    row["beta_max"] = m.beta_max;
    row["gamma_avg"] = rational_to_json(m.gamma_avg);
    row["gamma_max"] = m.gamma_max;
    row["im_bound"] = b.im_bound;
    row["pc_bound"] = b.pc_bound;
    row["equality"] = m.equality;
    rows_json.push_back(std::move(row));
    rows.push_back({str(n), str(mds), m.beta_avg.str(), str(m.beta_max), m.gamma_avg.str(), str(m.gamma_max),
                    str(b.im_bound), str(b.pc_bound), str(m.equality)});
  }
  if (want_table(sh)) {
    emit(sh, out,
         table({"n", "mds", "beta_avg", "beta_max", "gamma_avg", "gamma_max", "im_bound", "pc_bound", "equality"},
               rows));
  } else {
    Json j;
    j["v"] = kSchemaVersion;
    j["p"] = a.p;
    j["m"] = a.m;
    j["ell"] = a.ell;
    j["r"] = a.r;
    j["rows"] = std::move(rows_json);
    emit(sh, out, dump(j));
  }
  return ok ? kOk : kVerdictFailure;
}

void add_shared(CLI::App* cmd, Shared& sh, bool seed, bool budget) {
  cmd->add_option("--out", sh.out, "Output path");
  cmd->add_option("--format", sh.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--jobs", sh.jobs, "Worker threads")->check(CLI::PositiveNumber);
  if (seed) cmd->add_option("--seed", sh.seed, "Random seed");
  if (budget) cmd->add_option("--budget", sh.budget, "Candidate budget")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Repair-bandwidth toolkit for MDS array codes", "mdsrepair"};
  app.require_subcommand(1);
  Shared sh;
  std::function<int()> action;

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a code and repair scheme, writing JSON files");
  construct->add_option("--p", ca.p, "Characteristic")->required();
  construct->add_option("--m", ca.m, "Base field degree (q = p^m)");
  construct->add_option("--ell", ca.ell, "Sub-packetization")->required();
  construct->add_option("--r", ca.r, "Redundancy")->required();
  construct->add_option("--n", ca.n, "Length")->required();
  add_shared(construct, sh, false, false);
  construct->callback([&] { action = [&] { return cmd_construct(ca, sh, out); }; });

  std::string mds_file;
  auto* check = app.add_subcommand("check-mds", "Verify the MDS property of a code file");
  check->add_option("code", mds_file, "code.json")->required();
  add_shared(check, sh, false, false);
  check->callback([&] { action = [&] { return cmd_check_mds(mds_file, sh, out); }; });

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Print the lower bounds for a parameter set");
  auto* qopt = bounds->add_option("--q", ba.q, "Field size");
  bounds->add_option("--p", ba.p, "Characteristic")->excludes(qopt);
  bounds->add_option("--m", ba.m, "Base field degree");
  bounds->add_option("--ell", ba.ell, "Sub-packetization")->required();
  bounds->add_option("--r", ba.r, "Redundancy")->required();
  bounds->add_option("--n", ba.n, "Length")->required();
  add_shared(bounds, sh, false, false);
  bounds->callback([&] { action = [&] { return cmd_bounds(ba, sh, out); }; });

  std::string eval_code, eval_scheme;
  bool expect_equality = false;
  auto* eval = app.add_subcommand("eval", "Per-node bandwidth and I/O of a scheme");
  eval->add_option("code", eval_code, "code.json")->required();
  eval->add_option("scheme", eval_scheme, "scheme.json")->required();
  eval->add_flag("--expect-equality", expect_equality, "Exit 1 unless every node meets the bound");
  add_shared(eval, sh, false, false);
  eval->callback([&] { action = [&] { return cmd_eval(eval_code, eval_scheme, expect_equality, sh, out); }; });

  BruteArgs bf;
  auto* brute = app.add_subcommand("bruteforce", "Exhaustive search for the best repair subspace");
  brute->add_option("code", bf.code, "code.json")->required();
  brute->add_option("--node", bf.node, "1-based node index or 'all'");
  brute->add_option("--objective", bf.objective, "alpha or lambda")->check(CLI::IsMember({"alpha", "lambda"}));
  brute->add_option("--range-begin", bf.begin, "First candidate index");
  brute->add_option("--range-end", bf.end, "One past the last candidate index");
  add_shared(brute, sh, false, true);
  brute->callback([&] { action = [&] { return cmd_bruteforce(bf, sh, out); }; });

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Run repair campaigns on random codewords");
  sim->add_option("code", sa.code, "code.json")->required();
  sim->add_option("scheme", sa.scheme, "scheme.json")->required();
  sim->add_option("--trials", sa.trials, "Codewords per node")->check(CLI::PositiveNumber);
  sim->add_option("--node", sa.node, "1-based node index or 'all'");
  add_shared(sim, sh, true, false);
  sim->callback([&] { action = [&] { return cmd_simulate(sa, sh, out); }; });

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Construct and evaluate over a range of lengths");
  sweep->add_option("--p", sw.p, "Characteristic")->required();
  sweep->add_option("--m", sw.m, "Base field degree");
  sweep->add_option("--ell", sw.ell, "Sub-packetization")->required();
  sweep->add_option("--r", sw.r, "Redundancy")->required();
  sweep->add_option("--n-min", sw.n_min, "Smallest length")->required();
  sweep->add_option("--n-max", sw.n_max, "Largest length")->required();
  add_shared(sweep, sh, false, false);
  sweep->callback([&] { action = [&] { return cmd_sweep(sw, sh, out); }; });

  std::vector<std::string> owned{"mdsrepair"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : owned) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParameterRejected;
  }

  try {
    return action();
  } catch (const InputError& e) {
    err << "error: " << e.message << "\n";
    return kMalformedInput;
  } catch (const Error& e) {
    // The budget message already carries the candidate count.
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::BudgetExceeded) return kBudgetExceeded;
    return is_parameter_error(e.kind()) ? kParameterRejected : kVerdictFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerdictFailure;
  }
}

}  // namespace mdsrepair::cli
