#include "mdsrepair/simulate.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace mdsrepair {

RowFactor row_factor(const BaseField& f, const Matrix& a) {
  RowFactor out;
  Matrix kept(0, a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const Matrix candidate = vstack(kept, Matrix(1, a.cols(), Vec(a.row(r).begin(), a.row(r).end())));
    if (rank(f, candidate) == candidate.rows()) {
      kept = candidate;
      out.kept.push_back(r);
    }
  }
  // Express every row of a in the kept rows: solve x·kept = a_r through the
  // RREF of [keptᵀ | a_rᵀ].
  out.coeffs = Matrix(a.rows(), out.kept.size());
  const Matrix kept_t = transpose(kept);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto pos = std::find(out.kept.begin(), out.kept.end(), r);
    if (pos != out.kept.end()) {
      out.coeffs(r, static_cast<std::size_t>(pos - out.kept.begin())) = 1;
      continue;
    }
    if (out.kept.empty()) continue;
    const Matrix system = hstack(kept_t, transpose(Matrix(1, a.cols(), Vec(a.row(r).begin(), a.row(r).end()))));
    const RrefResult res = rref(f, system);
    for (std::size_t k = 0; k < res.rank; ++k) {
      const std::size_t pc = res.pivots[k];
      if (pc == out.kept.size()) fail(ErrorKind::InternalInconsistency, "row outside the kept row space");
      out.coeffs(r, pc) = res.reduced(k, out.kept.size());
    }
  }
  out.rows = std::move(kept);
  if (out.rows.rows() == 0) out.rows = Matrix(0, a.cols());
  return out;
}

RepairPlan plan_repair(const Realization& re, const Matrix& m, std::size_t i) {
  require_repair_matrix(m, re.skeleton(), i);
  const BaseField& f = re.field();
  RepairPlan plan;
  plan.failed = i;
  for (std::size_t j = 0; j < re.n(); ++j) {
    if (j == i) continue;
    RepairPlan::Helper h;
    h.node = j;
    h.factor = row_factor(f, multiply(f, m, re.block(j)));
    for (std::size_t c = 0; c < h.factor.rows.cols(); ++c) {
      for (std::size_t r = 0; r < h.factor.rows.rows(); ++r) {
        if (h.factor.rows(r, c) != 0) {
          h.accessed.push_back(c);
          break;
        }
      }
    }
    plan.helpers.push_back(std::move(h));
  }
  const auto inv = inverse(f, multiply(f, m, re.block(i)));
  if (!inv) fail(ErrorKind::NotARepairMatrix, "M*H_i is singular", {static_cast<std::int64_t>(i) + 1});
  plan.decoder = negate(f, *inv);
  return plan;
}

RepairTranscript execute_repair(const BaseField& f, const RepairPlan& plan, const Codeword& cw) {
  RepairTranscript tr;
  tr.failed = plan.failed;
  const std::size_t ell = plan.decoder.rows();
  Vec acc(ell, 0);
  for (const RepairPlan::Helper& h : plan.helpers) {
    HelperTranscript ht;
    ht.node = h.node;
    ht.accessed = h.accessed;
    // The helper reads only the accessed coordinates of its block.
    const Vec& block = cw.at(h.node);
    Vec visible(block.size(), 0);
    for (std::size_t c : h.accessed) visible[c] = block[c];
    ht.sent = apply(f, h.factor.rows, visible);
    const Vec contribution = apply(f, h.factor.coeffs, ht.sent);
    for (std::size_t k = 0; k < ell; ++k) acc[k] = f.add(acc[k], contribution[k]);
    tr.downloaded += ht.sent.size();
    tr.accessed += ht.accessed.size();
    tr.helpers.push_back(std::move(ht));
  }
  tr.reconstructed = apply(f, plan.decoder, acc);
  return tr;
}

RepairTranscript run_repair(const Realization& re, const RepairScheme& scheme, const Codeword& cw,
                            std::size_t i) {
  if (i >= re.n() || scheme.per_node.size() != re.n())
    fail(ErrorKind::BadParameters, "scheme and node index must match the code");
  if (cw.size() != re.n() ||
      std::any_of(cw.begin(), cw.end(), [&](const Vec& b) { return b.size() != re.ell(); })) {
    fail(ErrorKind::NotACodeword, "codeword has the wrong shape");
  }
  const Vec syn = syndrome(re, cw);
  if (std::any_of(syn.begin(), syn.end(), [](Symbol x) { return x != 0; }))
    fail(ErrorKind::NotACodeword, "nonzero syndrome");
  return execute_repair(re.field(), plan_repair(re, scheme.per_node[i], i), cw);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + (trial + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

CampaignReport campaign(const Realization& re, const RepairScheme& scheme, std::uint64_t trials,
                        std::uint64_t seed, std::optional<std::size_t> node, unsigned jobs) {
  if (scheme.per_node.size() != re.n()) fail(ErrorKind::BadShape, "scheme needs one matrix per node");
  std::vector<std::size_t> targets;
  if (node) {
    if (*node >= re.n()) fail(ErrorKind::BadParameters, "node index out of range");
    targets.push_back(*node);
  } else {
    for (std::size_t i = 0; i < re.n(); ++i) targets.push_back(i);
  }

  const BaseField& f = re.field();
  const CodewordSampler sampler(re);
  CampaignReport rep;
  rep.trials = trials;
  rep.seed = seed;
  std::vector<RepairPlan> plans;
  for (std::size_t i : targets) {
    plans.push_back(plan_repair(re, scheme.per_node[i], i));
    CampaignNodeRow row;
    row.node = i;
    row.beta = bandwidth(scheme.per_node[i], re, i);
    row.gamma = io_count(scheme.per_node[i], re, i);
    rep.nodes.push_back(row);
  }

  struct Outcome {
    std::vector<std::size_t> downloaded;
    std::vector<std::size_t> accessed;
    std::vector<std::string> failures;
  };
  auto run_trial = [&](std::uint64_t k) {
    Outcome out;
    const Codeword cw = sampler.sample(trial_seed(seed, k));
    for (std::size_t t = 0; t < plans.size(); ++t) {
      const RepairTranscript tr = execute_repair(f, plans[t], cw);
      out.downloaded.push_back(tr.downloaded);
      out.accessed.push_back(tr.accessed);
      const std::string where = "trial " + std::to_string(k) + " node " + std::to_string(targets[t] + 1);
      if (tr.reconstructed != cw[targets[t]]) out.failures.push_back(where + ": wrong reconstruction");
      if (static_cast<std::int64_t>(tr.downloaded) != rep.nodes[t].beta)
        out.failures.push_back(where + ": downloaded differs from bandwidth");
      if (static_cast<std::int64_t>(tr.accessed) != rep.nodes[t].gamma)
        out.failures.push_back(where + ": accessed differs from I/O");
    }
    return out;
  };

  std::vector<Outcome> outcomes(trials);
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    for (std::uint64_t k = 0; k < trials; ++k) outcomes[k] = run_trial(k);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        for (std::uint64_t k = w; k < trials; k += jobs) outcomes[k] = run_trial(k);
      });
    for (auto& t : workers) t.join();
  }

  for (std::uint64_t k = 0; k < trials; ++k) {
    const Outcome& o = outcomes[k];
    for (std::size_t t = 0; t < plans.size(); ++t) {
      CampaignNodeRow& row = rep.nodes[t];
      if (k == 0) {
        row.downloaded = o.downloaded[t];
        row.accessed = o.accessed[t];
      } else if (row.downloaded != o.downloaded[t] || row.accessed != o.accessed[t]) {
        rep.failures.push_back("trial " + std::to_string(k) + " node " + std::to_string(row.node + 1) +
                               ": counts changed between trials");
      }
      ++row.repairs;
      rep.total_downloaded += o.downloaded[t];
      rep.total_accessed += o.accessed[t];
    }
    rep.failures.insert(rep.failures.end(), o.failures.begin(), o.failures.end());
  }
  return rep;
}

}  // namespace mdsrepair
