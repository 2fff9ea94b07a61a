#include <cstdlib>
#include <cstring>

#include "bes/kernels.hpp"

namespace bes::kernels {

const Table& active() {
    static const Table& t = [] () -> const Table& {
        const char* force = std::getenv("BES_KERNELS");
        if (force && std::strcmp(force, "scalar") == 0) return scalar();
        if (auto* v = avx2()) return *v;
        return scalar();
    }();
    return t;
}

}  // namespace bes::kernels
