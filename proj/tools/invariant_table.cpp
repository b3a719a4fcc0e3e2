// Library usage example: prints Z for each triangulation given on the
// command line, for a few small groups and cocycles.

#include "dw/dw.hpp"

#include <iostream>

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: invariant_table file.tri [file.tri ...]\n";
    return 2;
  }
  struct Row {
    const char* label;
    dw::FiniteGroup group;
    dw::Cochain alpha;
  };
  const std::vector<Row> rows{{"Z2 trivial", dw::cyclic_group(2), dw::trivial_cochain(dw::cyclic_group(2), 2)},
                              {"Z2 product", dw::cyclic_group(2), dw::product_z2_cocycle()},
                              {"Z3 carry:1", dw::cyclic_group(3), dw::carry_cocycle(3, 1)},
                              {"S3 trivial", dw::symmetric_group_3(), dw::trivial_cochain(dw::symmetric_group_3(), 6)}};
  for (int i = 1; i < argc; ++i) {
    try {
      const auto t = dw::load_triangulation(argv[i]);
      std::cout << argv[i] << ": " << t.vertex_count() << " vertices, " << t.tets().size() << " tets\n";
      for (const auto& r : rows) {
        const auto z = dw::partition_function(t, r.group, r.alpha);
        std::cout << "  " << r.label << ":";
        for (const auto& c : z.z.coefficients()) std::cout << ' ' << dw::to_string(c);
        const auto c = z.z.to_complex();
        std::cout << "   ~ " << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i\n";
      }
    } catch (const dw::Error& e) {
      std::cout << argv[i] << ": " << e.code() << ": " << e.what() << "\n";
    }
  }
  return 0;
}
