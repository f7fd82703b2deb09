#pragma once

#include "acl/local_integrals.hpp"
#include "acl/torus.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace acl::tools {

// One grid point of the local-integral sweep. The uniformizer value is 0 for
// inert tori, which carry none.
struct SweepPoint {
    std::int64_t q = 3;
    TorusKind kind = TorusKind::split;
    int n_T = 0;
    int alpha = 1;
    int n_chi = 0;
    int uniformizer = 1;
    std::uint64_t choice = 0;

    [[nodiscard]] std::string key() const;
    friend auto operator<=>(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepGrid {
    std::vector<std::int64_t> qs{2, 3, 5};
    std::vector<TorusKind> kinds{TorusKind::split, TorusKind::inert, TorusKind::ramified};
    std::vector<int> n_T{0, 1, 2};
    std::vector<int> alphas{1, -1};
    std::vector<int> n_chi{0, 1, 2, 3, 4};
    std::vector<int> uniformizers{1, -1};
    std::vector<std::uint64_t> choices{0, 1};
};

// A sweep point with its torus and character built.
struct SweepCase {
    SweepPoint point;
    LocalTorusCase torus;
    TorusCharacter chi;
};

// All constructible points of the grid in key order. Characters that do not
// exist (conductor 1 on the split torus over F_2) are skipped, and so are
// choices that repeat an earlier character.
[[nodiscard]] std::vector<SweepCase> expand(const SweepGrid& grid);

// A Satake parameter with |alpha|^2 = q: exact a + bi when q = a^2 + b^2,
// otherwise i sqrt(q) in floating point.
[[nodiscard]] CoefficientValue spherical_alpha(std::int64_t q);

// Runs body(i) for i in [0, n) on up to `jobs` threads. Each index writes
// only its own slot, so the caller's results come out in index order. The
// first exception thrown by a body is rethrown after all threads joined.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body body) {
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace acl::tools
