#include "arena/shape.h"

#include "arena/errors.h"

namespace arena {

std::string State::to_string() const {
    return std::to_string(wins) + "-" + std::to_string(losses);
}

ArenaShape::ArenaShape(int win_threshold, int loss_threshold)
    : m_(win_threshold), n_(loss_threshold) {
    if (m_ < 1 || n_ < 1) {
        throw DomainError("arena thresholds must be positive, got " + std::to_string(m_) + "-" +
                          std::to_string(n_));
    }
}

bool ArenaShape::contains(State s) const {
    return s.wins >= 0 && s.losses >= 0 && s.wins <= m_ && s.losses <= n_ &&
           !(s.wins == m_ && s.losses == n_);
}

bool ArenaShape::is_boundary(State s) const {
    return contains(s) && (s.wins == m_ || s.losses == n_);
}

std::vector<State> ArenaShape::states() const {
    std::vector<State> out;
    out.reserve(static_cast<std::size_t>((m_ + 1) * (n_ + 1) - 1));
    for (int level = 0; level <= m_ + n_ - 1; ++level) {
        for (int i = 0; i <= m_; ++i) {
            const State s{i, level - i};
            if (contains(s)) out.push_back(s);
        }
    }
    return out;
}

std::vector<State> ArenaShape::interior_states() const {
    std::vector<State> out;
    for (const State s : states()) {
        if (!is_boundary(s)) out.push_back(s);
    }
    return out;
}

std::vector<State> ArenaShape::boundary_states() const {
    std::vector<State> out;
    out.reserve(static_cast<std::size_t>(m_ + n_));
    for (int j = 0; j < n_; ++j) out.push_back({m_, j});
    for (int i = m_ - 1; i >= 0; --i) out.push_back({i, n_});
    return out;
}

void ArenaShape::require_state(State s) const {
    if (!contains(s)) {
        throw DomainError("state " + s.to_string() + " is not on the lattice of a " + to_string() +
                          " arena");
    }
}

std::string ArenaShape::to_string() const {
    return std::to_string(m_) + "-" + std::to_string(n_);
}

} // namespace arena
