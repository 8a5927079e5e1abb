#include "sdvo/axil.hpp"

#include <stdexcept>

namespace sdvo {

namespace {

constexpr AxilLevel N = AxilLevel::None;
constexpr AxilLevel A = AxilLevel::A;
constexpr AxilLevel B = AxilLevel::B;
constexpr AxilLevel C = AxilLevel::C;
constexpr AxilLevel D = AxilLevel::D;

// [e1][e2][e3], e3 columns: Minimal, Low, Medium, High.
constexpr AxilLevel kTable[3][4][4] = {
    // Easy
    {{N, N, N, N}, {N, N, N, N}, {N, N, N, A}, {N, N, A, B}},
    // Medium
    {{N, N, N, N}, {N, N, N, A}, {N, N, A, B}, {N, A, B, C}},
    // Difficult
    {{N, N, N, A}, {N, N, A, B}, {N, A, B, C}, {A, B, C, D}},
};

}  // namespace

AxilLevel derive_axil(const AxilFactors& f) {
    return kTable[static_cast<int>(f.e1)][static_cast<int>(f.e2)][static_cast<int>(f.e3)];
}

char axil_letter(AxilLevel l) {
    switch (l) {
        case AxilLevel::None: return '-';
        case AxilLevel::A: return 'A';
        case AxilLevel::B: return 'B';
        case AxilLevel::C: return 'C';
        case AxilLevel::D: return 'D';
    }
    return '?';
}

ScoreMap::ScoreMap() : ScoreMap({0.0, 1.0, 2.0, 4.0, 8.0}) {}

ScoreMap::ScoreMap(const std::array<double, 5>& scores) : scores_(scores) {
    if (scores_[0] < 0) throw std::invalid_argument("ScoreMap: negative score");
    for (int i = 1; i < 5; ++i)
        if (!(scores_[i] > scores_[i - 1]))
            throw std::invalid_argument("ScoreMap: scores must be strictly increasing");
}

double level_to_score(AxilLevel l, const ScoreMap& mapping) { return mapping.score(l); }

}  // namespace sdvo
