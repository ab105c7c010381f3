#pragma once

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "tourney/model.hpp"

namespace testing {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(TOURNEY_DATA_DIR) / name;
}

inline tourney::Roster letters(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(std::string(1, static_cast<char>('A' + i)));
    }
    return tourney::Roster(names);
}

/// Team i beats team j for i < j every time: i scores `big`, j scores 0.
inline tourney::PairwiseGoalModel dominant_chain(std::size_t n, double big = 60.0) {
    tourney::SquareMatrix<double> m(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = big;
        }
    }
    return tourney::PairwiseGoalModel(letters(n), m);
}

/// Team 0 beats everyone; everyone else is level.
inline tourney::PairwiseGoalModel dominant_team(std::size_t n, std::size_t strong = 0) {
    tourney::SquareMatrix<double> m(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        m(strong, j) = 60.0;
        m(j, strong) = 0.0;
    }
    return tourney::PairwiseGoalModel(letters(n), m);
}

inline tourney::PairwiseGoalModel uniform_model(std::size_t n, double mean = 1.2) {
    return tourney::PairwiseGoalModel(letters(n), tourney::SquareMatrix<double>(n, mean));
}

inline tourney::PairTable table_from(const std::string& text) {
    std::istringstream in(text);
    return tourney::read_pair_table(in, "test");
}

}  // namespace testing
