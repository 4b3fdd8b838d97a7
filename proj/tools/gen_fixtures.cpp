// Regenerates the canonical fixture files under fixtures/.
#include <iostream>

#include "xmodkit/io.hpp"
#include "xmodkit/oracle.hpp"

using namespace xmodkit;

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";
  const auto emit = [&](const std::string& file, Document doc) {
    write_file(dir + "/" + file, serialize_document(doc));
    std::cout << dir << "/" << file << "\n";
  };
  emit("fix-a.xmod.json",
       make_document("xmod", oracle::fix_a(), "FIX-A",
                     "S3 acting on A3 by conjugation, kappa the inclusion"));
  emit("fix-b.xmod.json",
       make_document("xmod", oracle::fix_b(), "FIX-B",
                     "Z2 and Z2 with the trivial action, kappa the identity"));
  emit("fix-c.xmod.json",
       make_document("xmod", oracle::fix_c(), "FIX-C",
                     "indiscrete base on two objects, transported Z2 fibers"));
  emit("fix-d.splitepi.json",
       make_document("splitepi", oracle::fix_d(), "FIX-D",
                     "monoid section with non-invertible q"));
  emit("fix-e.prexmod.json",
       make_document("prexmod", oracle::fix_e(), "FIX-E",
                     "trivial base over S3; the Peiffer identity fails"));
  emit("fix-a.relcat.json",
       make_document("relcat", xmod_to_relcat(oracle::fix_a()), "FIX-A-relcat",
                     "the internal category of FIX-A"));
  emit("z2.category.json",
       make_document("category", oracle::cyclic_group_z2(), "Z2"));
  return 0;
}
