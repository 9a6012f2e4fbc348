#include "qcorr/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qcorr::kernels {

namespace detail {
const Funcs* avx2_impl();
}

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct Selection {
    const Funcs* funcs;
    Backend backend;
};

Selection auto_selection() {
    const Funcs* a = avx2();
    if (const char* env = std::getenv("QCORR_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return {&scalar(), Backend::Scalar};
        if (std::strcmp(env, "avx2") == 0 && a) return {a, Backend::Avx2};
        // Unknown or unavailable request: fall through to the default choice.
    }
    if (a) return {a, Backend::Avx2};
    return {&scalar(), Backend::Scalar};
}

Selection& selection() {
    static Selection s = auto_selection();
    return s;
}

}  // namespace

const Funcs* avx2() {
    const Funcs* impl = detail::avx2_impl();
    return (impl != nullptr && cpu_has_avx2()) ? impl : nullptr;
}

const Funcs& active() { return *selection().funcs; }

Backend active_backend() { return selection().backend; }

const char* active_name() { return selection().backend == Backend::Avx2 ? "avx2" : "scalar"; }

bool select(Backend b) {
    if (b == Backend::Scalar) {
        selection() = {&scalar(), Backend::Scalar};
        return true;
    }
    if (const Funcs* a = avx2()) {
        selection() = {a, Backend::Avx2};
        return true;
    }
    return false;
}

void select_auto() { selection() = auto_selection(); }

}  // namespace qcorr::kernels
