#include <iostream>

#include "gkss/acceptance.hpp"

int main()
{
    const auto results = gkss::acceptance::run_all();
    return gkss::acceptance::print_report(results, std::cout) == 0 ? 0 : 1;
}
