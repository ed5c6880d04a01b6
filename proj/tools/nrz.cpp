// nrz: command-line front end for verdicts, tables, samplers and tree catalogs.
#include "nrz/analytic.hpp"
#include "nrz/cp2_tree.hpp"
#include "nrz/diagonal.hpp"
#include "nrz/fixed_points.hpp"
#include "nrz/g_signature.hpp"
#include "nrz/ht_odd.hpp"
#include "nrz/oracle.hpp"
#include "nrz/samplers.hpp"
#include "nrz/subgroups.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace nrz;

namespace {

enum class Format { Csv, Json };

struct Common {
  std::string format;
  std::string output;
  int jobs = 1;
};

// Thrown for bad user input that CLI11 cannot catch itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Format resolve_format(const Common& c, Format fallback) {
  if (c.format.empty()) return fallback;
  return c.format == "csv" ? Format::Csv : Format::Json;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char d) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, d))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

std::string csv_num(long double x) {
  std::ostringstream os;
  os << std::setprecision(12) << static_cast<double>(x);
  return os.str();
}

// ---------------------------------------------------------------------------
// trial runner: trial i always draws from substream i, so output is
// independent of the number of workers

template <class F>
std::vector<std::vector<double>> run_trials(long trials, int jobs, std::size_t width, F trial) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(trials), std::vector<double>(width));
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<long>(trials, 1))));
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        for (long i = w; i < trials; i += jobs) trial(i, out[static_cast<std::size_t>(i)]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

struct StatRow {
  std::string name;
  long double mean = 0, stderr_ = 0;
};

std::vector<StatRow> summarize(const std::vector<std::string>& names, const std::vector<std::vector<double>>& rows) {
  std::vector<StatRow> out;
  const long double t = static_cast<long double>(rows.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    long double s = 0, sq = 0;
    for (const auto& r : rows) {
      s += r[j];
      sq += static_cast<long double>(r[j]) * r[j];
    }
    StatRow st{names[j]};
    if (t > 0) {
      st.mean = s / t;
      long double var = t > 1 ? std::max(0.0L, (sq - s * s / t) / (t - 1)) : 0.0L;
      st.stderr_ = std::sqrt(var / t);
    }
    out.push_back(st);
  }
  return out;
}

std::string emit_stats(Format fmt, int n, const std::string& theta_num, const std::string& theta_den, long trials,
                       std::uint64_t seed, const std::vector<StatRow>& stats, json extra = json::object()) {
  std::ostringstream os;
  if (fmt == Format::Csv) {
    os << "n,theta_num,theta_den,trials,seed,stat,value,stderr\n";
    for (const auto& s : stats)
      os << n << ',' << theta_num << ',' << theta_den << ',' << trials << ',' << seed << ',' << s.name << ','
         << csv_num(s.mean) << ',' << csv_num(s.stderr_) << '\n';
  } else {
    json j = {{"n", n}, {"theta_num", theta_num}, {"theta_den", theta_den}, {"trials", trials}, {"seed", seed}};
    json st = json::array();
    for (const auto& s : stats)
      st.push_back({{"stat", s.name}, {"value", static_cast<double>(s.mean)}, {"stderr", static_cast<double>(s.stderr_)}});
    j["stats"] = st;
    for (auto& [k, v] : extra.items()) j[k] = v;
    os << j.dump() << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// subcommand bodies; each returns the full output text

struct VerdictOpts {
  std::string cycle_type, perm, rows, file;
  int n = -1;
  double log_base = kNaturalLogBase;
  bool abelian = false, generators = false;
};

std::string cmd_verdict_element(const VerdictOpts& o) {
  if (o.cycle_type.empty() == o.perm.empty()) throw UsageError("give exactly one of --cycle-type or --perm");
  Verdict v;
  json input;
  if (!o.cycle_type.empty()) {
    CycleType ct = parse_cycle_type(o.cycle_type, o.n);
    v = verdict_odd_element(ct, SearchBounds{}, o.log_base);
    input = {{"cycle_type", ct.to_string()}, {"n", ct.n}};
  } else {
    auto f = parse_signed_perm(o.perm);
    v = verdict_element(f);
    input = {{"perm", f.to_text()}, {"n", f.n()}};
  }
  if (!v.is_consistent()) throw std::logic_error("verdict failed its consistency check");
  return v.to_json(input).dump() + "\n";
}

std::string cmd_verdict_diagonal(const VerdictOpts& o) {
  std::string text = !o.file.empty() ? read_file(o.file) : o.rows;
  if (!o.file.empty() == !o.rows.empty()) throw UsageError("give exactly one of --rows or --file");
  for (auto& ch : text)
    if (ch == ',') ch = '\n';
  Subspace2 h = parse_subspace(text, o.n);
  Verdict v = verdict_diagonal(h);
  if (!v.is_consistent()) throw std::logic_error("verdict failed its consistency check");
  return v.to_json({{"n", h.n()}, {"rank", h.rank()}, {"basis", h.rows()}}).dump() + "\n";
}

std::string cmd_verdict_group(const VerdictOpts& o) {
  if (o.file.empty()) throw UsageError("verdict group needs --file");
  std::vector<SignedPermutation> elems;
  for (auto line : split(read_file(o.file), '\n')) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    elems.push_back(parse_signed_perm(line));
  }
  if (elems.empty()) throw UsageError("no elements in " + o.file);
  const int n = elems.front().n();
  ExplicitGroup g = o.generators ? ExplicitGroup::from_generators(n, elems) : ExplicitGroup(n, elems);
  if (o.abelian && !g.is_abelian()) throw UsageError("--abelian given but the group is not abelian");
  Verdict v = o.abelian ? verdict_abelian_odd_n(g) : verdict_group(g);
  if (!v.is_consistent()) throw std::logic_error("verdict failed its consistency check");
  return v.to_json({{"n", n}, {"order", g.order()}, {"abelian", g.is_abelian()}}).dump() + "\n";
}

struct SampleOpts {
  int n = 0, k = -1, t_max = -1;
  std::string theta = "1", stats;
  long trials = 1;
  std::uint64_t seed = 0;
  double a = 0.5, b = 2.0, log_base = kNaturalLogBase;
};

std::string cmd_sample_odd_perm(const SampleOpts& o, const Common& c) {
  Rational th = parse_rational(o.theta);
  th.canonicalize();
  auto names = split(o.stats.empty() ? "P_n,C_1,pass_rate" : o.stats, ',');
  std::vector<std::function<double(const CycleType&)>> fns;
  for (const auto& s : names) {
    if (s == "P_n") fns.push_back([lb = o.log_base](const CycleType& ct) { return prime_cycle_count(ct, lb); });
    else if (s == "pass_rate")
      fns.push_back([lb = o.log_base](const CycleType& ct) { return passes_necessary_checks(ct, lb) ? 1.0 : 0.0; });
    else if (s == "cycles") fns.push_back([](const CycleType& ct) { return ct.num_cycles(); });
    else if (s.rfind("C_", 0) == 0) {
      int d = std::stoi(s.substr(2));
      fns.push_back([d](const CycleType& ct) { return ct.count(d); });
    } else
      throw UsageError("unknown stat " + s);
  }
  auto sampler = odd_perm_sampler(o.n, th);
  RandomStream root(o.seed);
  auto rows = run_trials(o.trials, c.jobs, fns.size(), [&](long i, std::vector<double>& out) {
    RandomStream rs = root.substream(static_cast<std::uint64_t>(i));
    CycleType ct = sampler->sample(rs);
    for (std::size_t j = 0; j < fns.size(); ++j) out[j] = fns[j](ct);
  });
  json extra = {{"exact_sampler", sampler->exact()}};
  return emit_stats(resolve_format(c, Format::Csv), o.n, th.get_num().get_str(), th.get_den().get_str(), o.trials,
                    o.seed, summarize(names, rows), extra);
}

std::string cmd_sample_subspace(const SampleOpts& o, const Common& c) {
  auto names = split(o.stats.empty() ? "rank,has_even,short_weight" : o.stats, ',');
  for (const auto& s : names)
    if (s != "rank" && s != "has_even" && s != "short_weight") throw UsageError("unknown stat " + s);
  RandomStream root(o.seed);
  auto rows = run_trials(o.trials, c.jobs, names.size(), [&](long i, std::vector<double>& out) {
    RandomStream rs = root.substream(static_cast<std::uint64_t>(i));
    Subspace2 h = o.k < 0 ? sample_subspace_any_rank(o.n, rs) : sample_subspace(o.n, o.k, rs);
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (names[j] == "rank") out[j] = h.rank();
      else if (names[j] == "has_even") out[j] = has_even_element(h) ? 1 : 0;
      else if (h.rank() >= 2) out[j] = weight(find_short_element(h));
      else out[j] = h.rank() ? weight(h.basis().front()) : 0;
    }
  });
  return emit_stats(resolve_format(c, Format::Csv), o.n, "", "", o.trials, o.seed, summarize(names, rows),
                    {{"k", o.k}});
}

std::string cmd_sample_partition(const SampleOpts& o, const Common& c) {
  const int t_max = o.t_max < 0 ? default_t_max(o.n) : o.t_max;
  auto names = split(o.stats.empty() ? "R_n,ones,parts" : o.stats, ',');
  for (const auto& s : names)
    if (s != "R_n" && s != "ones" && s != "parts") throw UsageError("unknown stat " + s);
  odd_partition_sampler(o.n);  // build shared tables before the workers start
  if (sgn(bounded_ones_count(o.n, t_max)) == 0) throw EmptySupportError("empty support for these parameters");
  RandomStream root(o.seed);
  auto rows = run_trials(o.trials, c.jobs, names.size(), [&](long i, std::vector<double>& out) {
    RandomStream rs = root.substream(static_cast<std::uint64_t>(i));
    auto parts = sample_odd_partition_bounded_ones(o.n, t_max, rs);
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (names[j] == "R_n") out[j] = R_n(parts, o.n, o.a, o.b);
      else if (names[j] == "ones") out[j] = static_cast<double>(std::count(parts.begin(), parts.end(), 1));
      else out[j] = static_cast<double>(parts.size());
    }
  });
  json extra = {{"t_max", t_max}, {"a", o.a}, {"b", o.b},
                {"expected_R_n_approx", static_cast<double>(expected_R_n_approx(o.n, o.a, o.b))}};
  return emit_stats(resolve_format(c, Format::Csv), o.n, "", "", o.trials, o.seed, summarize(names, rows), extra);
}

struct TableOpts {
  int max_n = 50;
  std::string theta = "1";
};

std::string cmd_table_gf(const TableOpts& o, const Common& c) {
  Rational th = parse_rational(o.theta);
  th.canonicalize();
  if (o.max_n > kExactAlphaLimit) throw UsageError("table gf supports --max-n up to " + std::to_string(kExactAlphaLimit));
  auto tab = alpha_table(th, o.max_n);
  std::ostringstream os;
  if (resolve_format(c, Format::Csv) == Format::Csv) {
    os << "n,alpha_num,alpha_den,a_scaled\n";
    for (int n = 0; n <= o.max_n; ++n) {
      Rational a = tab->alpha(n);
      os << n << ',' << a.get_num().get_str() << ',' << a.get_den().get_str() << ',' << tab->scaled(n).get_str() << '\n';
    }
  } else {
    json rows = json::array();
    for (int n = 0; n <= o.max_n; ++n)
      rows.push_back({{"n", n}, {"alpha", tab->alpha(n).get_str()}, {"a_scaled", tab->scaled(n).get_str()}});
    os << json{{"theta", th.get_str()}, {"rows", rows}}.dump() << '\n';
  }
  return os.str();
}

std::string cmd_table_partitions(const TableOpts& o, const Common& c) {
  auto t = shared_q_tables(o.max_n);
  std::ostringstream os;
  if (resolve_format(c, Format::Csv) == Format::Csv) {
    os << "N,q_odd,q_ge3\n";
    for (int N = 0; N <= o.max_n; ++N)
      os << N << ',' << t->q_odd[static_cast<std::size_t>(N)].get_str() << ','
         << t->q_ge3[static_cast<std::size_t>(N)].get_str() << '\n';
  } else {
    json rows = json::array();
    for (int N = 0; N <= o.max_n; ++N)
      rows.push_back({{"N", N}, {"q_odd", t->q_odd[static_cast<std::size_t>(N)].get_str()},
                      {"q_ge3", t->q_ge3[static_cast<std::size_t>(N)].get_str()}});
    os << json{{"rows", rows}}.dump() << '\n';
  }
  return os.str();
}

std::string cmd_table_counts(const TableOpts& o, const Common& c) {
  std::ostringstream os;
  if (resolve_format(c, Format::Csv) == Format::Csv) {
    os << "n,log2_two_subgroups_lower,log2_generated_upper,gap,log2_abelian_lower\n";
    for (int n = 1; n <= o.max_n; ++n) {
      auto b = counting_bounds(n);
      os << n << ',' << b.log2_two_subgroups_lower << ',' << csv_num(b.log2_generated_upper) << ','
         << csv_num(b.gap()) << ',' << csv_num(b.log2_abelian_lower) << '\n';
    }
  } else {
    json rows = json::array();
    for (int n = 1; n <= o.max_n; ++n) rows.push_back(counting_bounds(n).to_json());
    os << json{{"rows", rows}}.dump() << '\n';
  }
  return os.str();
}

std::string cmd_gsig(long a, long b, int m) {
  auto r = verify_gsignature_cp2(a, b, m);
  if (!r.holds) throw std::logic_error("G-signature balance failed for (" + std::to_string(a) + "," +
                                       std::to_string(b) + ";" + std::to_string(m) + ")");
  return r.to_json().dump() + "\n";
}

json subspace_json(const Subspace2& h) { return {{"n", h.n()}, {"rank", h.rank()}, {"basis", h.rows()}}; }

std::string cmd_trees_catalog(int n, const Common& c) {
  const auto& cat = rank3_catalog(n);
  std::ostringstream os;
  if (resolve_format(c, Format::Json) == Format::Json) {
    json entries = json::array();
    for (const auto& e : cat)
      entries.push_back({{"representative", subspace_json(e.representative)},
                         {"realized", subspace_json(e.realized)},
                         {"realization", e.realization.to_json()}});
    os << json{{"n", n}, {"count", cat.size()}, {"entries", entries}}.dump() << '\n';
  } else {
    os << "n,index,basis\n";
    for (std::size_t i = 0; i < cat.size(); ++i) {
      std::string basis;
      for (const auto& r : cat[i].representative.rows()) basis += (basis.empty() ? "" : " ") + r;
      os << n << ',' << i << ',' << basis << '\n';
    }
  }
  return os.str();
}

std::string cmd_trees_realize(const VerdictOpts& o) {
  std::string text = !o.file.empty() ? read_file(o.file) : o.rows;
  if (!o.file.empty() == !o.rows.empty()) throw UsageError("give exactly one of --rows or --file");
  for (auto& ch : text)
    if (ch == ',') ch = '\n';
  Subspace2 h = parse_subspace(text, o.n);
  auto r = realize_rank2(h);
  if (!(realized_subgroup(r.tree, r.generators) == h)) throw std::logic_error("realization does not reproduce the input");
  json j = r.to_json();
  j["input"] = subspace_json(h);
  j["tree_text"] = r.tree.to_text();
  return j.dump() + "\n";
}

std::string cmd_edmonds(const std::string& perm, int p) {
  auto f = parse_signed_perm(perm);
  auto inv = edmonds_invariants(f, p);
  json profiles = json::array();
  for (auto [k, s] : feasible_fixed_profiles(inv)) profiles.push_back({{"points", k}, {"surfaces", s}});
  json j = {{"perm", f.to_text()}, {"p", p}, {"t", inv.t}, {"c", inv.c}, {"r", inv.r},
            {"euler_char_fixed", euler_char_fixed(inv)}, {"profiles", profiles}};
  if (p == 2) j["free_involution"] = free_involution_report(f).to_json();
  return j.dump() + "\n";
}

std::string cmd_oracle(const std::string& what, int n, const Common& c) {
  json j = {{"what", what}, {"n", n}};
  if (what == "odd-order") {
    auto census = oracle::enum_odd_order(n, c.jobs);
    json shapes = json::array();
    for (const auto& [s, cnt] : census.by_shape) shapes.push_back({{"shape", s}, {"count", cnt}});
    j["total"] = census.total;
    j["by_shape"] = shapes;
  } else if (what == "signed-odd-order") {
    j["total"] = oracle::enum_signed_odd_order(n, c.jobs);
  } else if (what == "subspaces") {
    j["counts"] = oracle::subspace_counts(n);
    j["even_counts"] = oracle::subspace_counts(n, true);
  } else if (what == "partitions") {
    j["odd"] = oracle::enum_partitions(n, oracle::odd_part).size();
    j["odd_ge3"] = oracle::enum_partitions(n, oracle::odd_part_ge3).size();
  } else {
    throw UsageError("unknown --what " + what);
  }
  return j.dump() + "\n";
}

int default_jobs() {
  if (const char* e = std::getenv("NRZ_JOBS")) {
    try {
      return std::max(1, std::stoi(e));
    } catch (const std::exception&) {
      throw UsageError("NRZ_JOBS must be a positive integer");
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realizability verdicts, counting tables and samplers for signed permutation groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", common.output, "Write output to this file instead of stdout");
  auto* jobs_opt = app.add_option("--jobs,-j", common.jobs, "Worker threads (default: NRZ_JOBS or 1)")
                       ->check(CLI::PositiveNumber);

  std::function<std::string()> action;

  VerdictOpts vo;
  auto* verdict = app.add_subcommand("verdict", "Realizability verdicts with witnesses");
  verdict->require_subcommand(1);
  auto* v_el = verdict->add_subcommand("element", "Cyclic subgroup generated by one element");
  v_el->add_option("--cycle-type", vo.cycle_type, "Odd cycle lengths, e.g. 3,5,7");
  v_el->add_option("--perm", vo.perm, "Signed permutation 'n; images; signs'");
  v_el->add_option("--n", vo.n, "Ambient n (defaults to the sum of the cycle lengths)");
  v_el->add_option("--log-base", vo.log_base, "Logarithm base for the prime-cycle threshold (default e)");
  v_el->callback([&] { action = [&] { return cmd_verdict_element(vo); }; });
  auto* v_diag = verdict->add_subcommand("diagonal", "Diagonal subgroup given by 0/1 generator rows");
  v_diag->add_option("--rows", vo.rows, "Comma-separated rows, e.g. 1100,0011");
  v_diag->add_option("--file", vo.file, "File with one row per line");
  v_diag->add_option("--n", vo.n, "Ambient n");
  v_diag->callback([&] { action = [&] { return cmd_verdict_diagonal(vo); }; });
  auto* v_grp = verdict->add_subcommand("group", "Explicit group from an element file");
  v_grp->add_option("--file", vo.file, "One signed permutation per line")->required();
  v_grp->add_flag("--abelian", vo.abelian, "Apply only the abelian odd-n rule");
  v_grp->add_flag("--generators", vo.generators, "Lines are generators; take the closure");
  v_grp->callback([&] { action = [&] { return cmd_verdict_group(vo); }; });

  SampleOpts so;
  auto* sample = app.add_subcommand("sample", "Seeded Monte Carlo experiments");
  sample->require_subcommand(1);
  auto add_sample_common = [&](CLI::App* s) {
    s->add_option("--n", so.n, "Size")->required()->check(CLI::NonNegativeNumber);
    s->add_option("--trials", so.trials, "Number of trials")->check(CLI::PositiveNumber);
    s->add_option("--seed", so.seed, "Random seed")->required();
    s->add_option("--stats", so.stats, "Comma-separated statistics");
  };
  auto* s_perm = sample->add_subcommand("odd-perm", "Odd-order permutations weighted by theta^cycles");
  add_sample_common(s_perm);
  s_perm->add_option("--theta", so.theta, "theta, 1 or 1/2");
  s_perm->add_option("--log-base", so.log_base, "Logarithm base for P_n");
  s_perm->callback([&] { action = [&] { return cmd_sample_odd_perm(so, common); }; });
  auto* s_sub = sample->add_subcommand("subspace", "Uniform subspaces of F_2^n");
  add_sample_common(s_sub);
  s_sub->add_option("--k", so.k, "Rank (default: uniform over all subspaces)");
  s_sub->callback([&] { action = [&] { return cmd_sample_subspace(so, common); }; });
  auto* s_part = sample->add_subcommand("partition", "Uniform odd partitions with few ones");
  add_sample_common(s_part);
  s_part->add_option("--t-max", so.t_max, "Maximum number of parts equal to 1 (default floor(sqrt(n)/ln n))");
  s_part->add_option("--a", so.a, "Lower window factor for R_n");
  s_part->add_option("--b", so.b, "Upper window factor for R_n");
  s_part->callback([&] { action = [&] { return cmd_sample_partition(so, common); }; });

  TableOpts to;
  auto* table = app.add_subcommand("table", "Exact tables");
  table->require_subcommand(1);
  auto* t_gf = table->add_subcommand("gf", "alpha_n and scaled a_n");
  t_gf->add_option("--theta", to.theta, "theta");
  t_gf->add_option("--max-n", to.max_n, "Largest n")->check(CLI::NonNegativeNumber);
  t_gf->callback([&] { action = [&] { return cmd_table_gf(to, common); }; });
  auto* t_part = table->add_subcommand("partitions", "q_odd and q_ge3");
  t_part->add_option("--max-n", to.max_n, "Largest N")->check(CLI::NonNegativeNumber);
  t_part->callback([&] { action = [&] { return cmd_table_partitions(to, common); }; });
  auto* t_counts = table->add_subcommand("counts", "Subgroup counting bounds");
  t_counts->add_option("--max-n", to.max_n, "Largest n")->check(CLI::PositiveNumber);
  t_counts->callback([&] { action = [&] { return cmd_table_counts(to, common); }; });

  long ga = 1, gb = 2;
  int gm = 3;
  auto* gsig = app.add_subcommand("gsig", "G-signature balance for a linear Z/m action on CP^2");
  gsig->add_option("--m", gm, "Odd order m")->required();
  gsig->add_option("--a", ga, "First rotation number")->required();
  gsig->add_option("--b", gb, "Second rotation number")->required();
  gsig->callback([&] { action = [&] { return cmd_gsig(ga, gb, gm); }; });

  int tree_n = 4;
  auto* trees = app.add_subcommand("trees", "CP^2-tree constructions");
  trees->require_subcommand(1);
  auto* tr_cat = trees->add_subcommand("catalog", "Rank-3 diagonal groups realized by trees");
  tr_cat->add_option("--n", tree_n, "Number of vertices")->required()->check(CLI::Range(1, 8));
  tr_cat->callback([&] { action = [&] { return cmd_trees_catalog(tree_n, common); }; });
  auto* tr_r2 = trees->add_subcommand("realize-rank2", "Tree realizing a diagonal group of rank <= 2");
  tr_r2->add_option("--rows", vo.rows, "Comma-separated rows");
  tr_r2->add_option("--file", vo.file, "File with one row per line");
  tr_r2->add_option("--n", vo.n, "Ambient n");
  tr_r2->callback([&] { action = [&] { return cmd_trees_realize(vo); }; });

  std::string ed_perm;
  int ed_p = 2;
  auto* edmonds = app.add_subcommand("edmonds", "Edmonds invariants of a prime-order element");
  edmonds->add_option("--perm", ed_perm, "Signed permutation 'n; images; signs'")->required();
  edmonds->add_option("--p", ed_p, "Prime order")->required();
  edmonds->callback([&] { action = [&] { return cmd_edmonds(ed_perm, ed_p); }; });

  std::string or_what;
  int or_n = 0;
  auto* orc = app.add_subcommand("oracle", "Brute-force reference counts");
  orc->add_option("--what", or_what, "odd-order, signed-odd-order, subspaces or partitions")->required();
  orc->add_option("--n", or_n, "Size")->required();
  orc->callback([&] { action = [&] { return cmd_oracle(or_what, or_n, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (jobs_opt->count() == 0) common.jobs = default_jobs();
    std::string out = action();
    if (common.output.empty()) {
      std::cout << out;
    } else {
      std::ofstream f(common.output);
      if (!f) throw UsageError("cannot write " + common.output);
      f << out;
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::length_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
