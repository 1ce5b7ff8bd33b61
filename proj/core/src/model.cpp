#include "ptspec/model.hpp"

#include <cctype>

#include "ptspec/error.hpp"

namespace ptspec {

std::string_view to_string(Model m) {
  switch (m) {
    case Model::Cubic12:
      return "cubic12";
    case Model::HenonHeiles:
      return "henonHeiles";
  }
  return "unknown";
}

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Model parse_model(std::string_view text) {
  std::string key;
  for (char c : text) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "cubic12" || key == "cubic") return Model::Cubic12;
  if (key == "henonheiles" || key == "hh") return Model::HenonHeiles;
  throw InvalidArgument("unknown model '" + std::string(text) + "' (expected cubic12 or henonHeiles)");
}

}  // namespace ptspec
