// Acceptance harness: one line per criterion, exit nonzero on any failure.
#include <chrono>
#include <iostream>

#include "phgscat/checks.hpp"

int main(int argc, char** argv) {
  std::string corpus_dir = argc > 1 ? argv[1] : "corpus";
  phgscat::Corpus corpus;
  try {
    corpus = phgscat::load_corpus(corpus_dir);
  } catch (const std::exception& e) {
    std::cerr << "cannot load corpus: " << e.what() << "\n";
    return 2;
  }

  using Fn = phgscat::CheckResult (*)(const phgscat::Corpus&);
  Fn checks[] = {phgscat::check_monomial_identity,
                 phgscat::check_conjugation_identity,
                 phgscat::check_expansion_residual,
                 phgscat::check_exceptional_matches_obstruction,
                 phgscat::check_perturbation_leading_block,
                 phgscat::check_residue_trace_scaling,
                 phgscat::check_numeric_vs_symbol,
                 phgscat::check_indicial_and_wronskian,
                 phgscat::check_report_determinism};

  bool all_pass = true;
  int index = 0;
  for (Fn fn : checks) {
    ++index;
    auto t0 = std::chrono::steady_clock::now();
    phgscat::CheckResult r;
    try {
      r = fn(corpus);
    } catch (const std::exception& e) {
      r.name = "criterion " + std::to_string(index);
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof(timing), "%.1fs", dt);
    std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << index << "] " << r.name << " (" << timing
              << ")" << (r.detail.empty() ? "" : "  -- " + r.detail) << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
