#include "tperc/pool.hpp"

#include <cstdlib>
#include <string>

namespace tperc {

unsigned default_workers() {
    if (const char* env = std::getenv("TPERC_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace tperc
