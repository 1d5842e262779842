#include <iostream>

#include <CLI11.hpp>

#include "corpus_audit/corpus_io.hpp"
#include "corpus_audit/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a synthetic review corpus"};
  corpus_audit::SyntheticOptions opts;
  std::string out;
  app.add_option("--reviews", opts.reviews);
  app.add_option("--per-user", opts.reviews_per_user);
  app.add_option("--unusual", opts.unusual_user_fraction, "Share of users with a rare private vocabulary");
  app.add_option("--seed", opts.seed);
  app.add_option("--out", out)->required();
  CLI11_PARSE(app, argc, argv);
  corpus_audit::write_corpus_csv(corpus_audit::synthetic_corpus(opts), out);
  std::cout << "wrote " << opts.reviews << " reviews to " << out << "\n";
  return 0;
}
