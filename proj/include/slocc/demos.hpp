#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slocc/io.hpp"

namespace slocc {

// Reference states shared by the demos and the test suites.

/// (1/sqrt k) sum_{i<k} |i,i>, distinguishable, local dimension N.
PureState bipartite_vk(int N, int k);
/// (1/sqrt k) sum_{i<k} |i>|i>, two bosons.
PureState boson_pair_vk(int N, int k);
/// (1/sqrt k) sum_{i<k} |2i> ^ |2i+1>, two fermions, k <= N/2.
PureState fermion_pair_vk(int N, int k);
/// Three-qubit biseparable state with party `lone` factored out: |0> x Bell on the others.
PureState three_qubit_biseparable(int lone);
PureState product_zero(int parties, int N = 2);

struct DemoRow {
    std::string item;
    std::string quantity;
    std::string computed;
    std::string expected;
    bool pass = true;
};

struct DemoResult {
    std::string name;
    std::vector<DemoRow> rows;
    json details = json::array();
    int failures() const;
};

struct DemoOptions {
    FlowConfig flow;
    std::uint64_t seed = 1;
};

/// Names with their argument shapes, e.g. "bipartite N".
const std::vector<std::string>& demo_usage();

/// name in {bipartite, three-qubit, four-qubit-families, bosons, fermions, dicke}.
DemoResult run_demo(const std::string& name, const std::vector<int>& args, const DemoOptions& options = {});

void print_demo_table(std::ostream& os, const DemoResult& result);
void write_demo_csv(std::ostream& os, const DemoResult& result);

}  // namespace slocc
