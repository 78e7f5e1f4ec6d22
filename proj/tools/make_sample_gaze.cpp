// Regenerates data/sample_gaze.csv:
//   make_sample_gaze > data/sample_gaze.csv

#include <CLI11.hpp>

#include <iostream>

#include "gazekf/error.hpp"
#include "gazekf/sample_trace.hpp"

int main(int argc, char** argv) {
  gazekf::SampleTraceConfig config;
  CLI::App app{"Write a synthetic gaze trace with blinks as t,x,y,blink CSV"};
  app.add_option("--n", config.n, "Number of samples")->capture_default_str();
  app.add_option("--rate", config.rate_hz, "Sampling rate in Hz")->capture_default_str();
  app.add_option("--noise", config.noise_px, "Sensor noise standard deviation in px")
      ->capture_default_str();
  app.add_option("--blinks", config.blink_count, "Number of blinks")->capture_default_str();
  app.add_option("--blink-length", config.blink_length, "Samples per blink")->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    gazekf::emit_gaze_csv(std::cout, gazekf::generate_sample_trace(config));
  } catch (const std::exception& e) {
    std::cerr << "make_sample_gaze: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
