#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mipsched/generate.hpp"
#include "mipsched/mps.hpp"

namespace mipsched {

namespace {

MipModel from_generator_uri(const std::string& uri) {
  // gen:<family>:n=..,m=..,seed=..
  const auto second = uri.find(':', 4);
  const std::string fam = uri.substr(4, second == std::string::npos ? std::string::npos : second - 4);
  auto family = parse_family(fam);
  if (!family) throw std::runtime_error("unknown generator family '" + fam + "'");
  InstanceSize size{0, 1};
  std::uint64_t seed = 0;
  if (second != std::string::npos) {
    std::stringstream params(uri.substr(second + 1));
    std::string item;
    while (std::getline(params, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::runtime_error("bad generator parameter '" + item + "'");
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      try {
        if (key == "n") size.n = std::stoi(value);
        else if (key == "m") size.m = std::stoi(value);
        else if (key == "seed") seed = std::stoull(value);
        else throw std::runtime_error("unknown generator parameter '" + key + "'");
      } catch (const std::logic_error&) {
        throw std::runtime_error("bad value for generator parameter '" + key + "'");
      }
    }
  }
  if (size.n < 1 || size.m < 1) throw std::runtime_error("generator sizes must be >= 1 in '" + uri + "'");
  return generate_instance(*family, size, seed);
}

}  // namespace

MipModel load_instance(const std::string& uri) {
  if (uri.rfind("gen:", 0) == 0) return from_generator_uri(uri);
  std::ifstream in(uri, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + uri + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_mps(buffer.str());
}

}  // namespace mipsched
