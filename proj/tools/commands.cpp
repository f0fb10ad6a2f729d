#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hyperfact/embedding.hpp"
#include "hyperfact/embedding_restricted.hpp"
#include "hyperfact/factorization.hpp"
#include "hyperfact/json_io.hpp"
#include "hyperfact/rng.hpp"
#include "hyperfact/verifier.hpp"

namespace hyperfact::cli {

namespace {

// Refusals that should surface as usage errors (exit 2).
struct UsageRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Hypergraph load_hypergraph(const std::string& path) {
  return hypergraph_from_json(nlohmann::json::parse(read_text_file(path)));
}

void save_json(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, dump_canonical(j));
}

void print_certificate(const Certificate& cert, bool quiet) {
  if (quiet) return;
  for (const auto& check : cert.checks)
    std::cout << (check.pass ? "[pass] " : "[FAIL] ") << check.name
              << ": expected " << check.expected << ", got " << check.actual
              << "\n";
  std::cout << (cert.overall ? "overall: pass" : "overall: FAIL") << "\n";
}

struct GenFactorizationArgs {
  int m = 0;
  Count r = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen_factorization(const GenFactorizationArgs& a, bool quiet) {
  Hypergraph g = generate_r_factorization(a.m, a.r, a.seed);
  save_json(a.out, hypergraph_to_json(g));
  if (!quiet)
    std::cout << "wrote " << a.out << " with "
              << g.colors_used().size() << " classes of " << a.r * a.m / 3
              << " edges\n";
  return 0;
}

struct EmbedArgs {
  std::string input;
  int n = 0;
  Count r = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string certificate;
  bool ignore_bound = false;
};

int cmd_embed(const EmbedArgs& a, bool quiet) {
  EmbeddingInstance inst = make_embedding_instance(load_hypergraph(a.input),
                                                   a.n, a.r);
  EmbedOptions options;
  options.require_bound = !a.ignore_bound;
  Hypergraph host = embed(inst, a.seed, options);
  save_json(a.out, hypergraph_to_json(host));
  Certificate cert =
      verify_embedding(inst.input, host, EmbeddingMode::full, inst.r);
  if (!a.certificate.empty()) save_json(a.certificate, certificate_to_json(cert));
  print_certificate(cert, quiet);
  return cert.overall ? 0 : 1;
}

struct EmbedRestrictedArgs {
  std::string input;
  int n = 0;
  Count r = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string certificate;
};

int cmd_embed_restricted(const EmbedRestrictedArgs& a, bool quiet) {
  PiecesInstance inst =
      make_pieces_instance(load_hypergraph(a.input), a.n, a.r);
  Hypergraph host = embed_restricted(inst, a.seed);
  save_json(a.out, hypergraph_to_json(host));
  Certificate cert =
      verify_embedding(inst.pieces, host, EmbeddingMode::restricted, inst.r);
  if (!a.certificate.empty()) save_json(a.certificate, certificate_to_json(cert));
  print_certificate(cert, quiet);
  return cert.overall ? 0 : 1;
}

struct CounterexampleArgs {
  int m = 0;
  std::string out;
  std::string report;
};

int cmd_counterexample(const CounterexampleArgs& a, bool quiet) {
  EmbeddingInstance inst = counterexample(a.m);
  save_json(a.out, hypergraph_to_json(inst.input));
  EligibilityReport conditions = check_conditions(inst);
  WitnessReport witness = infeasibility_witness(inst);
  nlohmann::json report;
  report["m"] = inst.m;
  report["n"] = inst.n;
  report["r"] = inst.r;
  report["q"] = inst.q;
  report["conditions"] = {
      {"edge_divisible", conditions.edge_divisible},
      {"degree_divisible", conditions.degree_divisible},
      {"colors_within", conditions.colors_within},
      {"degrees_within", conditions.degrees_within},
      {"bound_ok", conditions.bound_ok},
      {"min_host", conditions.min_host},
      {"k", conditions.k},
  };
  report["witness"] = {
      {"applicable", witness.applicable},
      {"infeasible", witness.infeasible},
      {"required_new_edges", witness.required_new_edges},
      {"available_new_edges", witness.available_new_edges},
      {"detail", witness.detail},
  };
  if (!a.report.empty()) save_json(a.report, report);
  if (!quiet)
    std::cout << "m=" << inst.m << " n=" << inst.n << " r=" << inst.r
              << " q=" << inst.q << ": " << witness.detail << "\n";
  return 0;
}

struct VerifyArgs {
  std::string kind;
  std::string original;
  std::string result;
  Count r = 0;
  std::string certificate;
};

int cmd_verify(const VerifyArgs& a, bool quiet) {
  Certificate cert;
  if (a.kind == "factorization") {
    cert = verify_factorization(load_hypergraph(a.result), a.r);
  } else if (a.kind == "embedding-full" || a.kind == "embedding-restricted") {
    if (a.original.empty())
      throw std::runtime_error("verify: --original required for this kind");
    std::optional<Count> r;
    if (a.r > 0) r = a.r;
    cert = verify_embedding(load_hypergraph(a.original),
                            load_hypergraph(a.result),
                            a.kind == "embedding-full"
                                ? EmbeddingMode::full
                                : EmbeddingMode::restricted,
                            r);
  } else if (a.kind == "detachment") {
    if (a.original.empty())
      throw std::runtime_error("verify: --original required for this kind");
    DetachmentResult result = detachment_from_json(
        nlohmann::json::parse(read_text_file(a.result)));
    cert = verify_detachment(load_hypergraph(a.original), result,
                             NumberFunction::induced_by(result.psi));
  } else {
    throw std::runtime_error("verify: unknown kind " + a.kind);
  }
  if (!a.certificate.empty()) save_json(a.certificate, certificate_to_json(cert));
  print_certificate(cert, quiet);
  return cert.overall ? 0 : 1;
}

struct ScanArgs {
  int m_min = 4, m_max = 5;
  int n_min = -1, n_max = -1;
  Count r_min = 1, r_max = 3;
  std::uint64_t seed = 0;
  Count cap = 1000000;
  int threads = 1;
  bool timings = false;
  std::string out;
};

struct ScanTask {
  int m = 0, n = 0;
  Count r = 0;
  std::size_t index = 0;
};

std::string bool_field(bool value) { return value ? "true" : "false"; }

std::string scan_row(const ScanTask& task, std::uint64_t seed, bool timings) {
  const auto started = std::chrono::steady_clock::now();
  std::ostringstream row;
  row << task.m << ',' << task.n << ',' << task.r;

  std::optional<EmbeddingInstance> inst;
  std::string input_kind = "none";
  const Count host_degree = binom(task.n - 1, 2);
  const bool edge_div = (task.r * task.n) % 3 == 0;
  const bool degree_div = host_degree % task.r == 0;
  const Count k = degree_div ? host_degree / task.r : 0;
  try {
    if (factorization_exists(task.m, task.r)) {
      inst = make_embedding_instance(
          generate_r_factorization(task.m, task.r, seed), task.n, task.r);
      input_kind = "factorization";
    } else if (degree_div && binom(task.m, 3) <= k) {
      HypergraphBuilder b;
      b.add_vertices(task.m);
      ColorId color = 1;
      for (VertexId x = 0; x < task.m; ++x)
        for (VertexId y = x + 1; y < task.m; ++y)
          for (VertexId z = y + 1; z < task.m; ++z)
            b.add_edge(HyperedgeKey::triple(x, y, z), color++);
      inst = make_embedding_instance(std::move(b).build(), task.n, task.r);
      input_kind = "rainbow";
    } else if (degree_div && edge_div) {
      inst = random_embedding_instance(task.m, task.n, task.r, seed);
      input_kind = "greedy";
    }
  } catch (const std::exception&) {
    inst.reset();
    input_kind = "none";
  }
  row << ',' << input_kind;

  row << ',' << bool_field(edge_div) << ',' << bool_field(degree_div);
  if (inst) {
    EligibilityReport rep = check_conditions(*inst);
    row << ',' << bool_field(rep.colors_within) << ','
        << bool_field(rep.degrees_within) << ',' << bool_field(rep.bound_ok);
  } else {
    const bool bound_ok = task.m < 4 || task.n >= bound_min_n(task.m);
    row << ",,," << bool_field(bound_ok);
  }

  if (inst && input_kind == "factorization") {
    WitnessReport w = infeasibility_witness(*inst);
    row << ',' << (w.applicable ? bool_field(w.infeasible) : "na");
  } else {
    row << ",na";
  }

  std::string outcome = "skipped";
  std::string verified;
  if (inst && check_conditions(*inst).conditions_pass()) {
    try {
      EmbedOptions options;
      options.require_bound = false;
      Hypergraph host = embed(*inst, seed, options);
      outcome = "ok";
      verified = bool_field(
          verify_embedding(inst->input, host, EmbeddingMode::full, inst->r)
              .overall);
    } catch (const EmbedError& e) {
      switch (e.kind()) {
        case EmbedError::Kind::greedy_stuck: outcome = "greedy_stuck"; break;
        case EmbedError::Kind::negative_fill: outcome = "negative_fill"; break;
        case EmbedError::Kind::unsupported: outcome = "unsupported"; break;
        case EmbedError::Kind::ineligible: outcome = "ineligible"; break;
        default: outcome = "error"; break;
      }
    } catch (const SearchExhausted&) {
      outcome = "detach_exhausted";
    }
  }
  row << ',' << outcome << ',' << verified;

  if (timings) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    row << ','
        << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
               .count();
  }
  return row.str();
}

int cmd_scan(const ScanArgs& a, bool quiet) {
  std::vector<ScanTask> tasks;
  for (int m = a.m_min; m <= a.m_max; ++m) {
    int n_lo = a.n_min > 0 ? a.n_min : 2 * m - 1;
    int n_hi = a.n_max > 0 ? a.n_max : (m >= 4 ? bound_min_n(m) : 3 * m);
    for (int n = n_lo; n <= n_hi; ++n) {
      if (n < m) continue;
      if (n > 2000000 || binom(n, 3) > a.cap)
        throw UsageRefusal(
            "scan: C(" + std::to_string(n) + ",3) exceeds the cap " +
            std::to_string(a.cap) + "; raise --cap to override");
      for (Count r = a.r_min; r <= a.r_max; ++r) {
        ScanTask task;
        task.m = m;
        task.n = n;
        task.r = r;
        task.index = tasks.size();
        tasks.push_back(task);
      }
    }
  }

  std::vector<std::string> rows(tasks.size());
  const int threads = std::max(1, a.threads);
  if (threads == 1) {
    for (const ScanTask& task : tasks)
      rows[task.index] = scan_row(task, mix_seed(a.seed, task.index),
                                  a.timings);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          rows[i] = scan_row(tasks[i], mix_seed(a.seed, i), a.timings);
        }
      });
    for (auto& worker : pool) worker.join();
  }

  std::ostringstream csv;
  csv << "m,n,r,input,edge_divisible,degree_divisible,colors_within,"
         "degrees_within,bound_ok,witness_infeasible,embed_outcome,"
         "verify_pass";
  if (a.timings) csv << ",millis";
  csv << '\n';
  for (const auto& row : rows) csv << row << '\n';

  if (a.out.empty())
    std::cout << csv.str();
  else
    write_text_file(a.out, csv.str());
  if (!quiet && !a.out.empty())
    std::cout << "wrote " << rows.size() << " rows to " << a.out << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"embeddings of colored complete 3-uniform hypergraphs into "
               "factorizations"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress output");

  GenFactorizationArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "gen-factorization", "generate an r-factorization of K_m^3");
  gen_cmd->add_option("--m", gen.m, "order")->required();
  gen_cmd->add_option("--r", gen.r, "factor degree")->required();
  gen_cmd->add_option("--seed", gen.seed, "seed");
  gen_cmd->add_option("--out", gen.out, "output hypergraph json")->required();

  EmbedArgs emb;
  auto* embed_cmd = app.add_subcommand(
      "embed", "embed a colored K_m^3 into an r-factorization of K_n^3");
  embed_cmd->add_option("--input", emb.input, "instance hypergraph json")
      ->required();
  embed_cmd->add_option("--n", emb.n, "host order")->required();
  embed_cmd->add_option("--r", emb.r, "factor degree")->required();
  embed_cmd->add_option("--seed", emb.seed, "seed");
  embed_cmd->add_option("--out", emb.out, "output hypergraph json")
      ->required();
  embed_cmd->add_option("--certificate", emb.certificate,
                        "verification certificate json");
  embed_cmd->add_flag("--ignore-bound", emb.ignore_bound,
                      "attempt hosts below the admissible bound");

  EmbedRestrictedArgs embr;
  auto* embr_cmd = app.add_subcommand(
      "embed-restricted",
      "embed a fully prescribed piece system into an r-factorization");
  embr_cmd->add_option("--input", embr.input, "pieces hypergraph json")
      ->required();
  embr_cmd->add_option("--n", embr.n, "host order")->required();
  embr_cmd->add_option("--r", embr.r, "factor degree")->required();
  embr_cmd->add_option("--seed", embr.seed, "seed");
  embr_cmd->add_option("--out", embr.out, "output hypergraph json")
      ->required();
  embr_cmd->add_option("--certificate", embr.certificate,
                       "verification certificate json");

  CounterexampleArgs cx;
  auto* cx_cmd = app.add_subcommand(
      "counterexample",
      "factorization input on n = 2m-1 passing every divisibility check yet "
      "admitting no embedding");
  cx_cmd->add_option("--m", cx.m, "order")->required();
  cx_cmd->add_option("--out", cx.out, "output hypergraph json")->required();
  cx_cmd->add_option("--report", cx.report, "witness report json");

  VerifyArgs ver;
  auto* verify_cmd =
      app.add_subcommand("verify", "independently certify a result file");
  verify_cmd
      ->add_option("--kind", ver.kind,
                   "factorization | embedding-full | embedding-restricted | "
                   "detachment")
      ->required();
  verify_cmd->add_option("--original", ver.original, "input hypergraph json");
  verify_cmd->add_option("--result", ver.result, "result json")->required();
  verify_cmd->add_option("--r", ver.r, "factor degree (required for "
                         "factorization, optional otherwise)");
  verify_cmd->add_option("--certificate", ver.certificate,
                         "certificate output json");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand(
      "scan", "sweep (m, n, r) triples and tabulate embed outcomes");
  scan_cmd->add_option("--m-min", scan.m_min, "smallest order");
  scan_cmd->add_option("--m-max", scan.m_max, "largest order");
  scan_cmd->add_option("--n-min", scan.n_min,
                       "smallest host order (default 2m-1)");
  scan_cmd->add_option("--n-max", scan.n_max,
                       "largest host order (default: admissible bound)");
  scan_cmd->add_option("--r-min", scan.r_min, "smallest factor degree");
  scan_cmd->add_option("--r-max", scan.r_max, "largest factor degree");
  scan_cmd->add_option("--seed", scan.seed, "seed");
  scan_cmd->add_option("--cap", scan.cap, "largest allowed C(n,3)");
  scan_cmd->add_option("--threads", scan.threads, "worker threads")
      ->envname("HYPERFACT_THREADS");
  scan_cmd->add_flag("--timings", scan.timings,
                     "append a per-row millisecond column");
  scan_cmd->add_option("--out", scan.out, "CSV output path (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("hyperfact");
  for (const auto& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen_factorization(gen, quiet);
    if (embed_cmd->parsed()) return cmd_embed(emb, quiet);
    if (embr_cmd->parsed()) return cmd_embed_restricted(embr, quiet);
    if (cx_cmd->parsed()) return cmd_counterexample(cx, quiet);
    if (verify_cmd->parsed()) return cmd_verify(ver, quiet);
    if (scan_cmd->parsed()) return cmd_scan(scan, quiet);
  } catch (const UsageRefusal& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hyperfact::cli
