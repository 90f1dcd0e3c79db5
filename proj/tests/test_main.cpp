#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "support/seed.hpp"

// Accepts --seed N (or --seed=N) in addition to the doctest options.
int main(int argc, char** argv) {
    std::vector<char*> rest{argv[0]};
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) {
            toptree::testing::set_base_seed(std::strtoull(argv[++i], nullptr, 10));
        } else if (arg.rfind("--seed=", 0) == 0) {
            toptree::testing::set_base_seed(std::strtoull(arg.c_str() + 7, nullptr, 10));
        } else {
            rest.push_back(argv[i]);
        }
    }
    std::cout << "seed " << toptree::testing::base_seed() << '\n';
    doctest::Context context(static_cast<int>(rest.size()), rest.data());
    return context.run();
}
