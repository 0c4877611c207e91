// Regenerates tests/fixtures/calibration.json.
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "schlab/error.hpp"
#include "schlab/experiments.hpp"
#include "schlab/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pin empirical Lorentz-space constants"};
  std::uint64_t seed = 20261016;
  std::size_t trials = 4000;
  double margin = 1.25;
  std::string out;
  app.add_option("--seed", seed, "calibration seed");
  app.add_option("--trials", trials, "random sequences per constant")->check(CLI::PositiveNumber);
  app.add_option("--margin", margin, "multiplier applied to measured maxima")->check(CLI::Range(1.0, 100.0));
  app.add_option("--out", out, "output file (stdout when omitted)");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto cal = schlab::calibrate(seed, trials, margin);
    const std::string text = cal.to_json().dump(2) + "\n";
    if (out.empty())
      std::fputs(text.c_str(), stdout);
    else
      schlab::io::write_text(out, text);
  } catch (const schlab::InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
