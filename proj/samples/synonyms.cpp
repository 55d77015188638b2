// Ranks synonym candidates for a word from a tab-separated dictionary file.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <graphsim.hpp>

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s DICT WORD [TOP]\n", argv[0]);
    return 2;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::fprintf(stderr, "cannot open %s\n", argv[1]);
    return 2;
  }
  try {
    const auto dict = graphsim::build_dictionary_graph(in);
    const auto ranking = graphsim::rank_synonyms(dict, argv[2]);
    std::printf("%zu headwords; query ranked %zu in its neighborhood\n", dict.size(), ranking.query_rank + 1);
    graphsim::write_ranking_tsv(std::cout, ranking, argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 10);
  } catch (const graphsim::input_error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
}
