#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace dbubble;
  const std::vector<std::string> args(argv + 1, argv + argc);
  cli::CommandRequest request;
  try {
    request = cli::parse_args(args);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(cli::ExitCode::validation);
  }
  if (request.help) {
    std::cout << request.help_text;
    return 0;
  }

  const auto report = cli::execute(request);
  std::cout << report.output << std::flush;
  for (const auto& path : report.artifacts) std::cerr << "wrote " << path << '\n';
  if (!report.summary.empty()) std::cerr << report.summary << '\n';
  return report.exit_code;
}
