#include "anisoq/anisoq.h"

#include "anisoq/denoise.hpp"
#include "anisoq/entropy.hpp"
#include "anisoq/error.hpp"
#include "anisoq/image.hpp"
#include "anisoq/noise.hpp"

#include <exception>
#include <new>
#include <string>
#include <vector>

struct anisoq_image {
    anisoq::GrayImage image;
};

struct anisoq_profile {
    anisoq::AnisotropyProfile profile;
};

namespace {

thread_local std::string g_last_error;

anisoq_status fail(anisoq_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs fn and translates exceptions into status codes.
template <typename Fn>
anisoq_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ANISOQ_OK;
    } catch (const anisoq::InvalidArgument& e) {
        return fail(ANISOQ_ERR_INVALID_ARGUMENT, e.what());
    } catch (const anisoq::IoError& e) {
        return fail(ANISOQ_ERR_IO, e.what());
    } catch (const anisoq::FormatError& e) {
        return fail(ANISOQ_ERR_FORMAT, e.what());
    } catch (const anisoq::AnalysisError& e) {
        return fail(ANISOQ_ERR_ANALYSIS, e.what());
    } catch (const anisoq::CalibrationError& e) {
        return fail(ANISOQ_ERR_CALIBRATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ANISOQ_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ANISOQ_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ANISOQ_ERR_INTERNAL, "unknown error");
    }
}

void require(bool condition, const char* what) {
    if (!condition) throw anisoq::InvalidArgument(what);
}

anisoq::AnalysisConfig to_config(const anisoq_analysis_config* c) {
    anisoq::AnalysisConfig config;
    if (c == nullptr) return config;
    config.kernel_size = c->kernel_size;
    config.alpha = c->alpha;
    if (c->orientations != nullptr) {
        config.orientations = anisoq::OrientationSet(
            std::vector<double>(c->orientations, c->orientations + c->orientation_count));
    }
    config.validate();
    return config;
}

unsigned to_threads(const anisoq_analysis_config* c) { return c == nullptr ? 1u : c->threads; }

anisoq::NoiseKind to_kind(anisoq_noise_kind kind) {
    switch (kind) {
        case ANISOQ_NOISE_GAUSSIAN: return anisoq::NoiseKind::Gaussian;
        case ANISOQ_NOISE_SPECKLE: return anisoq::NoiseKind::Speckle;
        case ANISOQ_NOISE_IMPULSIVE: return anisoq::NoiseKind::Impulsive;
    }
    throw anisoq::InvalidArgument("unknown noise kind");
}

anisoq::DenoiseMethod to_method(anisoq_denoise_method method) {
    switch (method) {
        case ANISOQ_DENOISE_MEDIAN: return anisoq::DenoiseMethod::Median;
        case ANISOQ_DENOISE_RELAXED_MEDIAN: return anisoq::DenoiseMethod::RelaxedMedian;
        case ANISOQ_DENOISE_MEAN: return anisoq::DenoiseMethod::Mean;
    }
    throw anisoq::InvalidArgument("unknown denoise method");
}

}  // namespace

extern "C" {

ANISOQ_API uint32_t anisoq_abi_version(void) { return ANISOQ_ABI_VERSION; }

ANISOQ_API const char* anisoq_version_string(void) { return ANISOQ_VERSION_STRING; }

ANISOQ_API const char* anisoq_last_error(void) { return g_last_error.c_str(); }

ANISOQ_API const char* anisoq_status_string(anisoq_status status) {
    switch (status) {
        case ANISOQ_OK: return "ok";
        case ANISOQ_ERR_INVALID_ARGUMENT: return "invalid argument";
        case ANISOQ_ERR_IO: return "i/o error";
        case ANISOQ_ERR_FORMAT: return "format error";
        case ANISOQ_ERR_ANALYSIS: return "analysis error";
        case ANISOQ_ERR_CALIBRATION: return "calibration error";
        case ANISOQ_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

ANISOQ_API anisoq_status anisoq_image_create(size_t width, size_t height, const uint8_t* pixels,
                                             anisoq_image** out) {
    return guarded([&] {
        require(out != nullptr, "output handle is null");
        *out = nullptr;
        anisoq::GrayImage image(width, height);
        if (pixels != nullptr) {
            std::copy(pixels, pixels + image.size(), image.pixels().begin());
        }
        *out = new anisoq_image{std::move(image)};
    });
}

ANISOQ_API anisoq_status anisoq_image_load_pgm(const char* path, anisoq_image** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "path or output handle is null");
        *out = nullptr;
        *out = new anisoq_image{anisoq::load_pgm(path)};
    });
}

ANISOQ_API anisoq_status anisoq_image_save_pgm(const anisoq_image* image, const char* path) {
    return guarded([&] {
        require(image != nullptr && path != nullptr, "image or path is null");
        anisoq::save_pgm(image->image, path);
    });
}

ANISOQ_API void anisoq_image_destroy(anisoq_image* image) { delete image; }

ANISOQ_API size_t anisoq_image_width(const anisoq_image* image) { return image ? image->image.width() : 0; }

ANISOQ_API size_t anisoq_image_height(const anisoq_image* image) { return image ? image->image.height() : 0; }

ANISOQ_API const uint8_t* anisoq_image_pixels(const anisoq_image* image) {
    return image ? image->image.pixels().data() : nullptr;
}

ANISOQ_API anisoq_status anisoq_psnr(const anisoq_image* reference, const anisoq_image* test, double* mse,
                                     double* psnr_db) {
    return guarded([&] {
        require(reference != nullptr && test != nullptr, "image handle is null");
        const auto score = anisoq::psnr(reference->image, test->image);
        if (mse) *mse = score.mse;
        if (psnr_db) *psnr_db = score.psnr_db;
    });
}

ANISOQ_API void anisoq_analysis_config_init(anisoq_analysis_config* config) {
    if (config == nullptr) return;
    const anisoq::AnalysisConfig defaults;
    config->kernel_size = defaults.kernel_size;
    config->alpha = defaults.alpha;
    config->orientations = nullptr;
    config->orientation_count = 0;
    config->threads = 1;
}

ANISOQ_API anisoq_status anisoq_analyze(const anisoq_image* image, const anisoq_analysis_config* config,
                                        anisoq_profile** out) {
    return guarded([&] {
        require(image != nullptr && out != nullptr, "image or output handle is null");
        *out = nullptr;
        *out = new anisoq_profile{anisoq::analyze(image->image, to_config(config), to_threads(config))};
    });
}

ANISOQ_API void anisoq_profile_destroy(anisoq_profile* profile) { delete profile; }

ANISOQ_API double anisoq_profile_global(const anisoq_profile* profile) {
    return profile ? profile->profile.global : 0.0;
}

ANISOQ_API size_t anisoq_profile_level_count(const anisoq_profile* profile) {
    return profile ? profile->profile.levels.size() : 0;
}

ANISOQ_API size_t anisoq_profile_orientation_count(const anisoq_profile* profile) {
    return profile ? profile->profile.config.orientations.size() : 0;
}

ANISOQ_API anisoq_status anisoq_profile_orientation(const anisoq_profile* profile, size_t index,
                                                    double* theta_deg) {
    return guarded([&] {
        require(profile != nullptr && theta_deg != nullptr, "null argument");
        const auto angles = profile->profile.config.orientations.angles();
        require(index < angles.size(), "orientation index out of range");
        *theta_deg = angles[index];
    });
}

ANISOQ_API anisoq_status anisoq_profile_level(const anisoq_profile* profile, size_t index, int* level,
                                              double* anisotropy) {
    return guarded([&] {
        require(profile != nullptr, "profile is null");
        require(index < profile->profile.levels.size(), "level index out of range");
        const auto& rec = profile->profile.levels[index];
        if (level) *level = rec.level;
        if (anisotropy) *anisotropy = rec.anisotropy;
    });
}

ANISOQ_API anisoq_status anisoq_profile_mean_entropy(const anisoq_profile* profile, size_t level_index,
                                                     size_t orientation_index, double* mean_entropy) {
    return guarded([&] {
        require(profile != nullptr && mean_entropy != nullptr, "null argument");
        require(level_index < profile->profile.levels.size(), "level index out of range");
        const auto& means = profile->profile.levels[level_index].mean_entropy;
        require(orientation_index < means.size(), "orientation index out of range");
        *mean_entropy = means[orientation_index];
    });
}

ANISOQ_API anisoq_status anisoq_rank(const anisoq_image* const* images, size_t count,
                                     const anisoq_analysis_config* config, size_t* order_out, double* scores_out) {
    return guarded([&] {
        require(images != nullptr && order_out != nullptr && scores_out != nullptr, "null argument");
        require(count > 0, "nothing to rank");
        std::vector<anisoq::GrayImage> copies;
        copies.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            require(images[i] != nullptr, "image handle is null");
            copies.push_back(images[i]->image);
        }
        const auto ranked = anisoq::rank(copies, to_config(config), to_threads(config));
        for (size_t i = 0; i < ranked.size(); ++i) {
            order_out[i] = ranked[i].index;
            scores_out[i] = ranked[i].score;
        }
    });
}

ANISOQ_API anisoq_status anisoq_degrade(const anisoq_image* image, anisoq_noise_kind kind, double param,
                                        uint64_t seed, anisoq_image** out) {
    return guarded([&] {
        require(image != nullptr && out != nullptr, "image or output handle is null");
        *out = nullptr;
        *out = new anisoq_image{anisoq::degrade(image->image, anisoq::NoiseSpec{to_kind(kind), param, seed})};
    });
}

ANISOQ_API anisoq_status anisoq_calibrate(const anisoq_image* image, anisoq_noise_kind kind,
                                          double target_psnr_db, uint64_t seed, double* param_out,
                                          double* realized_psnr_db_out) {
    return guarded([&] {
        require(image != nullptr, "image handle is null");
        try {
            const auto result = anisoq::calibrate(image->image, to_kind(kind), target_psnr_db, seed);
            if (param_out) *param_out = result.spec.param;
            if (realized_psnr_db_out) *realized_psnr_db_out = result.realized_psnr_db;
        } catch (const anisoq::CalibrationError& e) {
            if (param_out) *param_out = e.best_param();
            if (realized_psnr_db_out) *realized_psnr_db_out = e.best_psnr_db();
            throw;
        }
    });
}

ANISOQ_API anisoq_status anisoq_denoise(const anisoq_image* image, anisoq_denoise_method method, int window,
                                        int relax_rank, anisoq_image** out) {
    return guarded([&] {
        require(image != nullptr && out != nullptr, "image or output handle is null");
        *out = nullptr;
        *out = new anisoq_image{anisoq::denoise(image->image, anisoq::DenoiseSpec{to_method(method), window, relax_rank})};
    });
}

}  // extern "C"
