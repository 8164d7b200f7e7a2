// One line per criterion. Exit status is zero when every failure is one of
// the documented, unattainable-as-stated criteria.
#include "tmoebius/cli/commands.hpp"

#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  std::set<int> which;
  for (int i = 1; i < argc; ++i) which.insert(std::atoi(argv[i]));
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::ostringstream sink;
  tmoebius::CommandRunner runner = [&](const std::vector<std::string>& a, std::ostream& os) {
    return tmoebius::cli::run(a, os, sink);
  };
  int unexpected = 0;
  for (int id : which) {
    auto r = tmoebius::run_acceptance({id}, 0, runner).front();
    std::cout << tmoebius::criterion_line(r) << " [" << r.seconds << " s]" << std::endl;
    if (!r.ok() && !(r.documented_failure && r.within_limit())) ++unexpected;
  }
  std::cout << (unexpected == 0 ? "acceptance: no unexpected failures" : "acceptance: unexpected failures") << "\n";
  return unexpected == 0 ? 0 : 1;
}
