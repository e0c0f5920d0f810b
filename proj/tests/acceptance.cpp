#include <exception>
#include <iostream>

#include "schiffer/verify.hpp"

int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "all";
  try {
    const schiffer::VerifyReport report = schiffer::run_verify(suite);
    int failed = 0;
    for (const auto& r : report.results) {
      std::cout << schiffer::format_result(r) << '\n';
      if (!r.pass) ++failed;
    }
    std::cout << (failed == 0 ? "ALL PASS" : "FAILED") << ": " << report.results.size() - failed << "/"
              << report.results.size() << " criteria (" << report.seconds << " s)\n";
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance: " << e.what() << '\n';
    return 1;
  }
}
