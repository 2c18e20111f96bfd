/* C interface to the anisoq library.
 *
 * All objects are opaque handles created and destroyed by the library. Every
 * fallible call returns an anisoq_status; on failure the calling thread's
 * last-error message is set and can be read with anisoq_last_error().
 */
#ifndef ANISOQ_ANISOQ_H
#define ANISOQ_ANISOQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ANISOQ_BUILDING_LIBRARY)
#    define ANISOQ_API __declspec(dllexport)
#  else
#    define ANISOQ_API __declspec(dllimport)
#  endif
#else
#  define ANISOQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define ANISOQ_ABI_VERSION 1u
#define ANISOQ_LEVEL_COUNT 255

typedef enum anisoq_status {
    ANISOQ_OK = 0,
    ANISOQ_ERR_INVALID_ARGUMENT = 1, /* bad parameter, null pointer, dimension mismatch */
    ANISOQ_ERR_IO = 2,               /* file cannot be opened, read or written */
    ANISOQ_ERR_FORMAT = 3,           /* file is not an 8-bit binary PGM */
    ANISOQ_ERR_ANALYSIS = 4,         /* analysis precondition failed, e.g. image smaller than kernel */
    ANISOQ_ERR_CALIBRATION = 5,      /* PSNR target unreachable */
    ANISOQ_ERR_INTERNAL = 6
} anisoq_status;

typedef enum anisoq_noise_kind {
    ANISOQ_NOISE_GAUSSIAN = 0,
    ANISOQ_NOISE_SPECKLE = 1,
    ANISOQ_NOISE_IMPULSIVE = 2
} anisoq_noise_kind;

typedef enum anisoq_denoise_method {
    ANISOQ_DENOISE_MEDIAN = 0,
    ANISOQ_DENOISE_RELAXED_MEDIAN = 1,
    ANISOQ_DENOISE_MEAN = 2
} anisoq_denoise_method;

typedef struct anisoq_image anisoq_image;
typedef struct anisoq_profile anisoq_profile;

/* Analysis parameters. Initialize with anisoq_analysis_config_init(). The
 * orientation array is borrowed for the duration of the call only; NULL
 * selects the default six angles 0, 30, ..., 150. */
typedef struct anisoq_analysis_config {
    int kernel_size;
    double alpha;
    const double *orientations;
    size_t orientation_count;
    unsigned threads; /* 0 = hardware concurrency; never changes results */
} anisoq_analysis_config;

ANISOQ_API uint32_t anisoq_abi_version(void);
ANISOQ_API const char *anisoq_version_string(void);

/* Message of the last failed call on this thread; "" if none. */
ANISOQ_API const char *anisoq_last_error(void);
ANISOQ_API const char *anisoq_status_string(anisoq_status status);

/* Images */
ANISOQ_API anisoq_status anisoq_image_create(size_t width, size_t height, const uint8_t *pixels,
                                             anisoq_image **out);
ANISOQ_API anisoq_status anisoq_image_load_pgm(const char *path, anisoq_image **out);
ANISOQ_API anisoq_status anisoq_image_save_pgm(const anisoq_image *image, const char *path);
ANISOQ_API void anisoq_image_destroy(anisoq_image *image);
ANISOQ_API size_t anisoq_image_width(const anisoq_image *image);
ANISOQ_API size_t anisoq_image_height(const anisoq_image *image);
/* Row-major raster of width * height bytes, owned by the image. */
ANISOQ_API const uint8_t *anisoq_image_pixels(const anisoq_image *image);

/* Full-reference metrics. *psnr_db is +infinity when *mse is 0. */
ANISOQ_API anisoq_status anisoq_psnr(const anisoq_image *reference, const anisoq_image *test, double *mse,
                                     double *psnr_db);

/* Anisotropy analysis */
ANISOQ_API void anisoq_analysis_config_init(anisoq_analysis_config *config);
ANISOQ_API anisoq_status anisoq_analyze(const anisoq_image *image, const anisoq_analysis_config *config,
                                        anisoq_profile **out);
ANISOQ_API void anisoq_profile_destroy(anisoq_profile *profile);
ANISOQ_API double anisoq_profile_global(const anisoq_profile *profile);
ANISOQ_API size_t anisoq_profile_level_count(const anisoq_profile *profile);
ANISOQ_API size_t anisoq_profile_orientation_count(const anisoq_profile *profile);
ANISOQ_API anisoq_status anisoq_profile_orientation(const anisoq_profile *profile, size_t index,
                                                    double *theta_deg);
/* index 0 is level 1. */
ANISOQ_API anisoq_status anisoq_profile_level(const anisoq_profile *profile, size_t index, int *level,
                                              double *anisotropy);
ANISOQ_API anisoq_status anisoq_profile_mean_entropy(const anisoq_profile *profile, size_t level_index,
                                                     size_t orientation_index, double *mean_entropy);

/* Sorts images by global anisotropy, highest first, ties in input order.
 * order_out and scores_out each receive `count` entries; scores_out[i] is the
 * score of images[order_out[i]]. */
ANISOQ_API anisoq_status anisoq_rank(const anisoq_image *const *images, size_t count,
                                     const anisoq_analysis_config *config, size_t *order_out, double *scores_out);

/* Degradation */
ANISOQ_API anisoq_status anisoq_degrade(const anisoq_image *image, anisoq_noise_kind kind, double param,
                                        uint64_t seed, anisoq_image **out);
/* Finds a param whose realized PSNR is within 0.2 dB of the target. On
 * ANISOQ_ERR_CALIBRATION the best attempt is still written to the outputs. */
ANISOQ_API anisoq_status anisoq_calibrate(const anisoq_image *image, anisoq_noise_kind kind,
                                          double target_psnr_db, uint64_t seed, double *param_out,
                                          double *realized_psnr_db_out);

/* Denoising */
ANISOQ_API anisoq_status anisoq_denoise(const anisoq_image *image, anisoq_denoise_method method, int window,
                                        int relax_rank, anisoq_image **out);

#ifdef __cplusplus
}
#endif

#endif /* ANISOQ_ANISOQ_H */
