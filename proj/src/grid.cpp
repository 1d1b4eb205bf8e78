#include "elri/grid.hpp"

#include <string>

#include "elri/errors.hpp"

namespace elri {

Grid::Grid(std::size_t n_points) : n_(n_points) {
    if (n_points < 4 || n_points % 2 != 0) {
        throw ConfigError("grid size must be even and >= 4, got " +
                          std::to_string(n_points));
    }
}

}  // namespace elri
