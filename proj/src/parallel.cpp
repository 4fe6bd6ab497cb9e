#include "sns/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace sns::parallel {

namespace {

int hardware_threads() {
#ifdef SNS_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::atomic<int>& cap() {
    static std::atomic<int> value{hardware_threads()};
    return value;
}

}  // namespace

void set_threads(int count) {
    if (count < 1) count = 1;
    cap() = count;
#ifdef SNS_HAVE_OPENMP
    omp_set_num_threads(count);
#endif
}

int threads() { return cap(); }

int configure_from_env() {
    if (const char* env = std::getenv(kThreadEnv)) {
        try {
            set_threads(std::stoi(env));
        } catch (const std::exception&) {
            // unparsable value: keep the default
        }
    }
    return threads();
}

}  // namespace sns::parallel
