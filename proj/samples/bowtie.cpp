// Scores a bow-tie graph against two structure graphs: the single edge
// (hub -> authority) and the path 1 -> 2 -> 3.
#include <cstdio>
#include <cstdlib>

#include <graphsim.hpp>

using namespace graphsim;

static void print(const char* title, const DenseMatrix& s) {
  std::printf("%s\n", title);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    std::printf("  %2zu", i);
    for (std::size_t j = 0; j < s.cols(); ++j) std::printf("  %.4f", s(i, j));
    std::printf("\n");
  }
}

int main(int argc, char** argv) {
  const std::size_t left = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2;
  const std::size_t right = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 3;
  const auto g = bowtie_graph(left, right);
  std::printf("bow-tie: center 0, %zu sources, %zu sinks\n\n", left, right);

  print("against hub -> authority (columns: hub, authority)",
        similarity_matrix(hub_authority_graph(), g).scores);
  print("\nagainst 1 -> 2 -> 3", similarity_matrix(path_graph(3), g).scores);

  const auto c = central_scores(g);
  std::printf("\ncentral score of the center: %.4f\n", c.values[0]);
}
