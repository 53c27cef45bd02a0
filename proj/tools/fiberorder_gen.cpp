// Emits seeded random instances in the CLI input formats.
#include <CLI11.hpp>

#include <iostream>

#include "fiberorder/generators.hpp"
#include "fiberorder/json_io.hpp"

using namespace fiberorder;

namespace {

Json lift_json(const LiftInstance& inst) {
  Json alpha = Json::array();
  for (const auto& [a, v] : inst.alpha) alpha.push_back({{"set", subset_to_json(a)}, {"value", v.str()}});
  return {{"n", inst.n}, {"c", rationals_to_json(inst.c)}, {"alpha", alpha}};
}

Json image_json(const gen::ImageInstance& im) {
  const auto& s = im.s;
  Json g = Json::object(), u = Json::array(), lambda = Json::object();
  for (std::size_t x = 0; x < s.k_size(); ++x) g[s.k_labels()[x]] = s.l_labels()[s.image(x)];
  for (const auto& set : im.u) {
    Json members = Json::array();
    for (auto x : set) members.push_back(s.k_labels()[x]);
    u.push_back(members);
  }
  for (std::size_t y = 0; y < s.l_size(); ++y) lambda[s.l_labels()[y]] = im.lambda.mass[y].str();
  return {{"K", s.k_labels()}, {"L", s.l_labels()}, {"g", g}, {"U", u},
          {"c", rationals_to_json(im.c)}, {"lambda", lambda}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random instances for the fiberorder CLI"};
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::string kind = "lift";
  std::size_t size = 5;
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--count", count)->capture_default_str();
  app.add_option("--kind", kind)->check(CLI::IsMember({"lift", "image", "poset"}))->capture_default_str();
  app.add_option("--size", size, "Poset size for --kind poset")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  gen::Rng rng(seed);
  Json out = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    if (kind == "lift") {
      out.push_back(lift_json(gen::lift_instance(rng, 4, 12)));
    } else if (kind == "image") {
      out.push_back(image_json(gen::image_instance(rng, 12, 6, 3)));
    } else {
      out.push_back(poset_to_json(gen::connected_poset(rng, size)));
    }
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}
