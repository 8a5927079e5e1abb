#ifndef SDVO_AXIL_HPP
#define SDVO_AXIL_HPP

#include <array>

namespace sdvo {

// E1: how easily the service can be substituted by another.
enum class Substitution { Easy = 0, Medium = 1, Difficult = 2 };
// E2: how often the user is exposed to the service.
enum class Exposition { Rare = 0, Low = 1, Medium = 2, High = 3 };
// E3: impact on the perceived quality of experience.
enum class QoeImpact { Minimal = 0, Low = 1, Medium = 2, High = 3 };

struct AxilFactors {
    Substitution e1 = Substitution::Easy;
    Exposition e2 = Exposition::Rare;
    QoeImpact e3 = QoeImpact::Minimal;
};

// Priority order: None < A < B < C < D.
enum class AxilLevel { None = 0, A = 1, B = 2, C = 3, D = 4 };

AxilLevel derive_axil(const AxilFactors& f);

char axil_letter(AxilLevel l);

// Letter -> numeric score, strictly increasing with the letter order.
class ScoreMap {
  public:
    // Default mapping: None 0, A 1, B 2, C 4, D 8.
    ScoreMap();
    explicit ScoreMap(const std::array<double, 5>& scores);

    double score(AxilLevel l) const { return scores_[static_cast<int>(l)]; }

  private:
    std::array<double, 5> scores_;
};

double level_to_score(AxilLevel l, const ScoreMap& mapping);

}  // namespace sdvo

#endif
