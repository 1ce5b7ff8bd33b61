#pragma once

#include <string>
#include <string_view>

namespace ptspec {

/// The two PT-symmetric Hamiltonians H = p_x^2 + p_y^2 + x^2 + y^2 + i g W.
///   Cubic12:     W = x y^2
///   HenonHeiles: W = x y^2 - x^3 / 3
enum class Model { Cubic12, HenonHeiles };

/// y-parity eigenvalue of a state or sector.
enum class Parity : int { Even = 1, Odd = -1 };

std::string_view to_string(Model m);
std::string_view to_string(Parity p);

/// Accepts "cubic12" / "henonHeiles" (case-insensitive, '-' and '_' ignored).
Model parse_model(std::string_view text);

inline int sign_of(Parity p) { return static_cast<int>(p); }

}  // namespace ptspec
