// Copyright 2026 The semiphi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the bundled example problem files into a directory.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "semiphi/fixtures.hpp"
#include "semiphi/io.hpp"

namespace {

using namespace semiphi;

ModuleMap scalar_map(double c) {
  const BlockAlgebra a = BlockAlgebra::full(1);
  const ConcreteModule e(a, 1, {ComplexMatrix::Ones(1, 1)});
  return ModuleMap(e, 1, 1, {c * ComplexMatrix::Ones(1, 1)});
}

void write(const std::filesystem::path& dir, const std::string& name,
           const io::ProblemFile& p) {
  std::ofstream out(dir / name);
  out << io::to_json(p).dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_problems <output-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const BlockAlgebra m2 = BlockAlgebra::full(2);
  const CPMap id1 = CPMap::identity(BlockAlgebra::full(1));

  write(dir, "identity_m2.json", io::make_cp_problem(CPMap::identity(m2)));
  write(dir, "transpose_m2.json", io::make_cp_problem(CPMap::transpose(m2)));
  write(dir, "scalar_c1.json", io::make_pair_problem(scalar_map(1.0), id1));
  write(dir, "scalar_c2.json", io::make_pair_problem(scalar_map(2.0), id1));
  {
    const auto fx = example_2_1(1);
    write(dir, "example_2_1_scalar.json", io::make_extension_problem(fx.map, fx.e, fx.phi));
  }
  {
    const auto fx = example_2_1(2);
    write(dir, "example_2_1_n2.json", io::make_extension_problem(fx.map, fx.e, fx.phi));
  }
  {
    const auto c = compacts_2_6(2);
    const auto gamma = canonical_compacts_extension(c.map, c.e, c.phi);
    write(dir, "compacts_2_6_n2.json", io::make_extension_problem(c.map, c.e, c.phi, gamma));
  }
  return 0;
}
