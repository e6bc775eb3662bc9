#include "ccr/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ccr {

int worker_count() {
    if (const char* env = std::getenv("CCR_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

}  // namespace ccr
