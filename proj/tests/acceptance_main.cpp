#include <iostream>
#include <string>

#include "specdisp/acceptance.hpp"

int main(int argc, char** argv) {
    const std::string suite = argc > 1 ? argv[1] : "all";
    const auto results = specdisp::acceptance::run_acceptance(suite);
    return specdisp::acceptance::report(results, std::cout) == 0 ? 0 : 1;
}
