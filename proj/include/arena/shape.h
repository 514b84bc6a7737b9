#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace arena {

/// Win/loss record (i wins, j losses) inside one run.
struct State {
    int wins = 0;
    int losses = 0;

    auto operator<=>(const State&) const = default;
    std::string to_string() const;  // "i-j"
};

/// Win threshold m and loss threshold n of an m-n arena.
class ArenaShape {
public:
    ArenaShape(int win_threshold, int loss_threshold);

    int win_threshold() const { return m_; }
    int loss_threshold() const { return n_; }

    bool contains(State s) const;
    bool is_boundary(State s) const;

    /// All (m+1)(n+1)-1 states ordered by round (i+j), then by wins.
    std::vector<State> states() const;
    /// Non-boundary states, same ordering as states().
    std::vector<State> interior_states() const;
    /// The m+n possible results: (m,0)..(m,n-1), then (m-1,n)..(0,n).
    std::vector<State> boundary_states() const;

    /// Throws DomainError unless s lies on the lattice.
    void require_state(State s) const;

    bool operator==(const ArenaShape&) const = default;
    std::string to_string() const;  // "m-n"

private:
    int m_;
    int n_;
};

} // namespace arena
