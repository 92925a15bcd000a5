#include "gph/marriage.hpp"

namespace gph {

ModelFile marriage_model(MarriageVariant variant, bool heterogeneous) {
  const double q12 = 0.95, q24 = 0.05, q34 = 0.1, q23 = 0.25, q25 = 0.07, q42 = 0.85, q35 = 0.5;
  const double speed = heterogeneous ? 0.25 : 1.0;
  if (variant == MarriageVariant::single) {
    Matrix T{{-q12, q12, 0.0, 0.0},
             {0.0, -(q23 + q24 + q25), q23, q24},
             {0.0, 0.0, -(q34 + q35), q34},
             {0.0, q42, 0.0, -q42}};
    Matrix D{{0.0}, {q25}, {q35}, {0.0}};
    MixtureModel model(validate_generator(T, D), Vector(4, speed), {0.5, 0.3, 0.1, 0.1},
                       Vector(4, 0.5));
    return {std::move(model), {"N", "M", "S", "W", "D"}};
  }
  Matrix T{{-q12, q12, 0.0}, {0.0, -(q23 + q24 + q25), q23}, {0.0, 0.0, -(q34 + q35)}};
  Matrix D{{0.0, 0.0}, {q24, q25}, {q34, q35}};
  MixtureModel model(validate_generator(T, D), Vector(3, speed), {0.5, 0.3, 0.1}, Vector(3, 0.5));
  return {std::move(model), {"N", "M", "S", "W", "D"}};
}

}  // namespace gph
