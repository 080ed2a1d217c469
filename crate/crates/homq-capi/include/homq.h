#ifndef HOMQ_H
#define HOMQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; aligned with the CLI exit-code contract.
 */
typedef enum HomqStatus {
  HomqStatus_Ok = 0,
  HomqStatus_OutsideZeroFreeRegion = 2,
  HomqStatus_InvalidInstance = 3,
  HomqStatus_InstanceTooLarge = 4,
  HomqStatus_NullArgument = 5,
  HomqStatus_Panic = 6,
} HomqStatus;

/**
 * Opaque restricted homomorphism instance.
 */
typedef struct HomqHomInstance HomqHomInstance;

/**
 * Opaque Ising instance.
 */
typedef struct HomqIsingInstance HomqIsingInstance;

/**
 * Opaque graph-induced X-program.
 */
typedef struct HomqXProgram HomqXProgram;

/**
 * Complex number as a plain pair.
 */
typedef struct HomqComplex {
  double re;
  double im;
} HomqComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a restricted homomorphism instance; stores a new handle in `out`.
 */
enum HomqStatus homq_hom_parse(const char *json, struct HomqHomInstance **out);

/**
 * Parses an Ising instance; stores a new handle in `out`.
 */
enum HomqStatus homq_ising_parse(const char *json, struct HomqIsingInstance **out);

/**
 * Parses a graph-induced X-program; stores a new handle in `out`.
 */
enum HomqStatus homq_iqp_parse(const char *json, struct HomqXProgram **out);

/**
 * Releases a hom handle; accepts null.
 */
void homq_hom_free(struct HomqHomInstance *ptr);

/**
 * Releases an Ising handle; accepts null.
 */
void homq_ising_free(struct HomqIsingInstance *ptr);

/**
 * Releases an X-program handle; accepts null.
 */
void homq_iqp_free(struct HomqXProgram *ptr);

/**
 * Exact restricted homomorphism partition function.
 */
enum HomqStatus homq_hom_exact(const struct HomqHomInstance *inst, struct HomqComplex *out_value);

/**
 * Multiplicative epsilon-approximation; `out_order` (nullable) receives
 * the truncation order. `force != 0` skips the regime check.
 */
enum HomqStatus homq_hom_approx(const struct HomqHomInstance *inst,
                                double epsilon,
                                int32_t force,
                                struct HomqComplex *out_value,
                                uintptr_t *out_order);

/**
 * Exact complex Ising partition function.
 */
enum HomqStatus homq_ising_exact(const struct HomqIsingInstance *inst,
                                 struct HomqComplex *out_value);

/**
 * Approximate Ising partition function through the gadget reduction.
 */
enum HomqStatus homq_ising_approx(const struct HomqIsingInstance *inst,
                                  double epsilon,
                                  int32_t force,
                                  struct HomqComplex *out_value,
                                  uintptr_t *out_order);

/**
 * Amplitude at the all-zeros string via the exact Ising identity.
 */
enum HomqStatus homq_iqp_amplitude_exact(const struct HomqXProgram *inst,
                                         struct HomqComplex *out_value);

/**
 * Amplitude via the interpolation pipeline.
 */
enum HomqStatus homq_iqp_amplitude_approx(const struct HomqXProgram *inst,
                                          double epsilon,
                                          int32_t force,
                                          struct HomqComplex *out_value,
                                          uintptr_t *out_order);

/**
 * Amplitude via the brute-force statevector oracle.
 */
enum HomqStatus homq_iqp_amplitude_statevector(const struct HomqXProgram *inst,
                                               struct HomqComplex *out_value);

/**
 * Zero-free disc radius for graphs of the given maximum degree.
 * Returns NaN for degree 0.
 */
double homq_zero_free_radius(uintptr_t max_degree);

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `cap`). Returns the full message length in bytes.
 */
uintptr_t homq_last_error(char *buf, uintptr_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMQ_H */
