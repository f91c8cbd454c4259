#ifndef NCAS_H
#define NCAS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bumped on any incompatible change of the exported signatures.
 */
#define NCAS_ABI_VERSION 1

typedef enum NcasClassification {
  NcasClassification_Symmetric = 0,
  NcasClassification_CommutativeNonsymmetric = 1,
  NcasClassification_Noncommutative = 2,
} NcasClassification;

typedef enum NcasStatus {
  NcasStatus_Ok = 0,
  NcasStatus_Usage = 1,
  NcasStatus_Verification = 2,
  NcasStatus_Precondition = 3,
  NcasStatus_NullPointer = 4,
  NcasStatus_OutOfRange = 5,
  NcasStatus_Panic = 6,
} NcasStatus;

/**
 * Wedderburn data of a family scheme.
 */
typedef struct NcasEigensystem NcasEigensystem;

/**
 * A verified association scheme.
 */
typedef struct NcasScheme NcasScheme;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

uint32_t ncas_abi_version(void);

/**
 * Library version as a static NUL-terminated string; do not free.
 */
const char *ncas_version(void);

/**
 * JSON description of the last error on this thread, or null.
 * The string is a copy and must be released with [`ncas_string_free`].
 */
char *ncas_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void ncas_string_free(char *s);

/**
 * Builds and verifies the BGW scheme for `GF(q)` and `Z_m`.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum NcasStatus ncas_bgw_scheme_new(uintptr_t q, uintptr_t m, struct NcasScheme **out);

/**
 * Builds and verifies the GH scheme for `GF(q)`, `q` odd.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum NcasStatus ncas_gh_scheme_new(uintptr_t q, struct NcasScheme **out);

/**
 * Parses a scheme file and re-verifies every axiom.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for writing one pointer.
 */
enum NcasStatus ncas_scheme_from_json(const char *json, struct NcasScheme **out);

/**
 * Serializes a scheme; release the string with [`ncas_string_free`].
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writing one pointer.
 */
enum NcasStatus ncas_scheme_to_json(const struct NcasScheme *s, char **out);

/**
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void ncas_scheme_free(struct NcasScheme *s);

/**
 * # Safety
 * `s` must be a live handle and `out` valid for writing.
 */
enum NcasStatus ncas_scheme_vertices(const struct NcasScheme *s, uintptr_t *out);

/**
 * Number of relations, identity included.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writing.
 */
enum NcasStatus ncas_scheme_rank(const struct NcasScheme *s, uintptr_t *out);

/**
 * # Safety
 * `s` must be a live handle and `out` valid for writing.
 */
enum NcasStatus ncas_scheme_classification(const struct NcasScheme *s,
                                           enum NcasClassification *out);

/**
 * Intersection number `p_{ij}^k`.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writing.
 */
enum NcasStatus ncas_scheme_intersection(const struct NcasScheme *s,
                                         uintptr_t i,
                                         uintptr_t j,
                                         uintptr_t k,
                                         uint64_t *out);

/**
 * Closed-form Wedderburn system of a BGW or GH scheme.
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writing one pointer.
 */
enum NcasStatus ncas_eigensystem_new(const struct NcasScheme *s, struct NcasEigensystem **out);

/**
 * # Safety
 * `e` must be null or a handle not yet freed.
 */
void ncas_eigensystem_free(struct NcasEigensystem *e);

/**
 * # Safety
 * `e` must be a live handle and `out` valid for writing.
 */
enum NcasStatus ncas_eigensystem_block_count(const struct NcasEigensystem *e, uintptr_t *out);

/**
 * Degree and multiplicity of simple block `k`.
 *
 * # Safety
 * `e` must be a live handle; `degree` and `multiplicity` valid for writing.
 */
enum NcasStatus ncas_eigensystem_block(const struct NcasEigensystem *e,
                                       uintptr_t k,
                                       uintptr_t *degree,
                                       uintptr_t *multiplicity);

/**
 * Character table, eigenmatrices and duality report as JSON, scalars as strings.
 * Release the string with [`ncas_string_free`].
 *
 * # Safety
 * `e` must be a live handle and `out` valid for writing one pointer.
 */
enum NcasStatus ncas_eigensystem_table_json(const struct NcasEigensystem *e, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCAS_H */
