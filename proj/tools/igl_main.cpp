// Command-line driver: check, prove, translate, countermodel, corpus-run.
// Exit codes: 0 accept / proof or countermodel found, 1 reject / no proof /
// no countermodel, 2 parse error, 3 resource limit, 4 internal error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "igl/igl.hpp"

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitParse = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw igl::ParseError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_output(const std::optional<std::string>& out_path,
                  const std::string& content) {
  if (!out_path) {
    std::cout << content;
    return;
  }
  std::ofstream out(*out_path, std::ios::binary);
  out << content;
  if (!out) throw igl::Error("cannot write " + *out_path);
}

std::string timestamp_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// One JSON object per line: entries first, then a summary.
void print_report_json(const igl::CheckReport& report, bool deterministic) {
  for (const auto& e : report.entries) {
    nlohmann::json line;
    line["path"] = e.path.to_text();
    line["code"] = e.code;
    line["message"] = e.message;
    std::cout << line.dump() << "\n";
  }
  nlohmann::json summary;
  summary["ok"] = report.ok();
  summary["entries"] = report.entries.size();
  if (!deterministic) summary["timestamp"] = timestamp_now();
  std::cout << summary.dump() << "\n";
}

igl::ProgressPredicate parse_progress(const std::string& name) {
  if (name == "k4circ") return igl::k4circ_progress();
  if (name == "none") return igl::no_progress_required();
  if (name.rfind("grz-", 0) == 0) {
    std::size_t dash = name.rfind('-');
    if (dash > 4) {
      auto rule = igl::parse_rule_name(name.substr(4, dash - 4));
      std::size_t k = 0;
      try {
        k = std::stoul(name.substr(dash + 1));
      } catch (...) {
        rule.reset();
      }
      if (rule) return igl::kth_premise_progress(*rule, k);
    }
  }
  throw igl::ParseError("unknown progress predicate `" + name +
                        "` (expected k4circ, none, or grz-<Rule>-<k>)");
}

igl::SearchBudget budget_from_env() {
  igl::SearchBudget b;
  if (const char* d = std::getenv("IGL_MAX_DEPTH")) b.max_depth = std::stoul(d);
  if (const char* s = std::getenv("IGL_MAX_STATES"))
    b.max_states = std::stoul(s);
  return b;
}

struct CheckArgs {
  std::string file;
  std::string system;
  std::string kind;
  std::string progress = "k4circ";
  bool json = false;
  bool deterministic = false;
};

int run_check(const CheckArgs& args) {
  igl::ProofDocument doc = igl::parse_proof_document(read_file(args.file));
  if (!args.system.empty() && args.system != igl::to_text(doc.system)) {
    std::cerr << args.file << ": declares system " << igl::to_text(doc.system)
              << " but --system " << args.system << " was required\n";
    return kExitReject;
  }
  if (!args.kind.empty() && args.kind != igl::to_text(doc.kind)) {
    std::cerr << args.file << ": declares kind " << igl::to_text(doc.kind)
              << " but --kind " << args.kind << " was required\n";
    return kExitReject;
  }
  igl::CheckReport report;
  if (doc.kind == igl::DocKind::Finite) {
    std::set<igl::Sequent> assumptions(doc.assumptions.begin(),
                                       doc.assumptions.end());
    report = igl::check_finite(doc.tree, doc.system, assumptions);
  } else {
    report = igl::check_cyclic(igl::to_cyclic(doc),
                               parse_progress(args.progress), doc.system);
  }
  if (args.json)
    print_report_json(report, args.deterministic);
  else
    std::cout << report.to_text();
  return report.ok() ? kExitAccept : kExitReject;
}

struct ProveArgs {
  std::vector<std::string> sequent;
  igl::SearchBudget budget;
  std::size_t max_size = 4;
  std::optional<std::string> out;
  bool json = false;
};

std::string joined(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += ' ';
    s += p;
  }
  return s;
}

int run_prove(const ProveArgs& args) {
  igl::Sequent goal = igl::parse_sequent(joined(args.sequent));
  igl::ProveResult res = igl::prove(goal, args.budget);
  if (res.proved()) {
    write_output(args.out,
                 igl::to_text(igl::from_finite(*res.proof, igl::System::iGLSeq)));
    return kExitAccept;
  }
  std::cout << "no proof: " << igl::to_text(goal) << "\n";
  igl::ValidityVerdict v =
      igl::valid_up_to(igl::interpret(goal), args.max_size);
  if (!v.valid()) {
    std::cout << "countermodel (falsified at world " << v.counter->world
              << "):\n"
              << igl::to_text(v.counter->model);
  } else {
    std::cout << "no countermodel with at most " << args.max_size
              << " worlds\n";
  }
  return kExitReject;
}

struct TranslateArgs {
  std::string direction;
  std::string file;
  std::optional<std::string> out;
  igl::SearchBudget budget;
};

int run_translate(const TranslateArgs& args) {
  igl::ProofDocument doc = igl::parse_proof_document(read_file(args.file));
  if (args.direction == "fin2circ") {
    if (doc.kind != igl::DocKind::Finite || doc.system != igl::System::iGLSeq)
      throw igl::NotAProof("fin2circ expects a finite iGL proof document");
    igl::CheckReport pre = igl::check_finite(doc.tree, doc.system);
    if (!pre.ok()) {
      std::cerr << "input does not check:\n" << pre.to_text();
      return kExitReject;
    }
    igl::CyclicDerivation d = igl::fin_to_circ(doc.tree, 100000, args.budget);
    igl::CheckReport post = igl::check_cyclic(d, igl::k4circ_progress());
    write_output(args.out, igl::to_text(igl::from_cyclic(d)));
    std::cerr << "translated proof checks: " << (post.ok() ? "ok" : "FAIL")
              << ", backlinks: " << d.backlinks.size() << "\n";
    return post.ok() ? kExitAccept : kExitInternal;
  }
  if (args.direction == "circ2fin") {
    if (doc.kind != igl::DocKind::Cyclic)
      throw igl::NotAProof("circ2fin expects a cyclic proof document");
    igl::FiniteProof p = igl::circ_to_fin(igl::to_cyclic(doc), args.budget);
    igl::CheckReport post = igl::check_finite(p, igl::System::iGLSeq);
    write_output(args.out, igl::to_text(igl::from_finite(p, igl::System::iGLSeq)));
    std::cerr << "translated proof checks: " << (post.ok() ? "ok" : "FAIL")
              << "\n";
    return post.ok() ? kExitAccept : kExitInternal;
  }
  throw igl::ParseError("direction must be fin2circ or circ2fin");
}

struct CountermodelArgs {
  std::vector<std::string> formula;
  std::size_t max_size = 5;
};

int run_countermodel(const CountermodelArgs& args) {
  igl::Formula f = igl::parse_formula(joined(args.formula));
  igl::ValidityVerdict v = igl::valid_up_to(f, args.max_size);
  if (!v.valid()) {
    std::cout << "countermodel (falsified at world " << v.counter->world
              << "):\n"
              << igl::to_text(v.counter->model);
    return kExitAccept;
  }
  std::cout << "valid on all frames with at most " << args.max_size
            << " worlds\n";
  return kExitReject;
}

struct CorpusArgs {
  std::string dir = "corpus";
  igl::SearchBudget budget;
};

// Per-file pipeline: the document must check as declared; accepted finite
// GL proofs additionally round-trip through the cyclic system back to a
// finite proof of the same root.
bool corpus_file_ok(const std::filesystem::path& path,
                    const igl::SearchBudget& budget, std::string& why) {
  igl::ProofDocument doc;
  try {
    doc = igl::parse_proof_document(read_file(path.string()));
  } catch (const igl::ParseError& e) {
    why = std::string("parse error: ") + e.what();
    return false;
  }
  bool expect_accept = !doc.expect || *doc.expect == "accept";
  igl::CheckReport report;
  if (doc.kind == igl::DocKind::Finite) {
    std::set<igl::Sequent> assumptions(doc.assumptions.begin(),
                                       doc.assumptions.end());
    report = igl::check_finite(doc.tree, doc.system, assumptions);
  } else {
    report = igl::check_cyclic(igl::to_cyclic(doc), igl::k4circ_progress(),
                               doc.system);
  }
  if (report.ok() != expect_accept) {
    why = expect_accept ? "expected accept, got: " + report.to_text()
                        : "expected reject but the checker accepted";
    return false;
  }
  if (!report.ok()) return true;  // expected rejection confirmed

  if (doc.kind == igl::DocKind::Finite &&
      doc.system == igl::System::iGLSeq && doc.assumptions.empty()) {
    igl::CyclicDerivation circ = igl::fin_to_circ(doc.tree, 100000, budget);
    igl::CheckReport circ_report =
        igl::check_cyclic(circ, igl::k4circ_progress());
    if (!circ_report.ok()) {
      why = "translation does not check: " + circ_report.to_text();
      return false;
    }
    if (igl::conclusion(circ) != igl::conclusion(doc.tree)) {
      why = "translation changed the root sequent";
      return false;
    }
    igl::FiniteProof back = igl::circ_to_fin(circ, budget);
    if (igl::conclusion(back) != igl::conclusion(doc.tree)) {
      why = "round trip changed the root sequent";
      return false;
    }
    if (!igl::check_finite(back, igl::System::iGLSeq).ok()) {
      why = "round-tripped proof does not check";
      return false;
    }
  }
  return true;
}

int run_corpus(const CorpusArgs& args) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(args.dir))
    if (entry.is_regular_file() && entry.path().extension() == ".proof")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no .proof files under " << args.dir << "\n";
    return kExitReject;
  }
  std::size_t failures = 0;
  for (const auto& f : files) {
    std::string why;
    bool ok = corpus_file_ok(f, args.budget, why);
    if (ok) {
      std::cout << "ok   " << f.string() << "\n";
    } else {
      ++failures;
      std::cout << "FAIL " << f.string() << ": " << why << "\n";
    }
  }
  std::cout << files.size() - failures << "/" << files.size() << " passed\n";
  return failures == 0 ? kExitAccept : kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequent proof toolkit: finite, cyclic, and ill-founded "
               "derivations with Kripke countermodels"};
  app.require_subcommand(1);

  igl::SearchBudget env_budget = budget_from_env();

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "verify a proof document");
  check->add_option("file", check_args.file, "proof document")->required();
  check->add_option("--system", check_args.system,
                    "require this system (iG3, iK4, iGL)");
  check->add_option("--kind", check_args.kind,
                    "require this kind (finite, cyclic)");
  check->add_option("--progress", check_args.progress,
                    "cyclic progress predicate: k4circ, none, grz-<Rule>-<k>");
  check->add_flag("--json", check_args.json, "JSON-lines report");
  check->add_flag("--deterministic", check_args.deterministic,
                  "omit timestamps from reports");

  ProveArgs prove_args;
  prove_args.budget = env_budget;
  CLI::App* prove = app.add_subcommand("prove", "search for a finite proof");
  prove->add_option("sequent", prove_args.sequent, "goal sequent text")
      ->required();
  prove->add_option("--depth", prove_args.budget.max_depth, "search depth cap");
  prove->add_option("--budget", prove_args.budget.max_states,
                    "search state cap");
  prove->add_option("--max-size", prove_args.max_size,
                    "countermodel size bound used on failure");
  prove->add_option("-o,--out", prove_args.out, "write the proof here");

  TranslateArgs translate_args;
  translate_args.budget = env_budget;
  CLI::App* translate =
      app.add_subcommand("translate", "convert between proof formats");
  translate->add_option("direction", translate_args.direction,
                        "fin2circ or circ2fin")
      ->required();
  translate->add_option("file", translate_args.file, "proof document")
      ->required();
  translate->add_option("-o,--out", translate_args.out,
                        "write the result here");

  CountermodelArgs cm_args;
  CLI::App* cm =
      app.add_subcommand("countermodel", "search small frames for a refutation");
  cm->add_option("formula", cm_args.formula, "formula text")->required();
  cm->add_option("--max-size", cm_args.max_size, "frame size bound");

  CorpusArgs corpus_args;
  corpus_args.budget = env_budget;
  CLI::App* corpus =
      app.add_subcommand("corpus-run", "run the bundled corpus pipeline");
  corpus->add_option("dir", corpus_args.dir, "corpus directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(check_args);
    if (prove->parsed()) return run_prove(prove_args);
    if (translate->parsed()) return run_translate(translate_args);
    if (cm->parsed()) return run_countermodel(cm_args);
    if (corpus->parsed()) return run_corpus(corpus_args);
  } catch (const igl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const igl::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const igl::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const igl::NotAProof& e) {
    std::cerr << e.what() << "\n";
    return kExitReject;
  } catch (const igl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
