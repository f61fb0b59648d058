#ifndef GQ_BIALGEBRA_H
#define GQ_BIALGEBRA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define GQB_OK 0

#define GQB_ERR_IO 3

#define GQB_ERR_MODEL 4

#define GQB_ERR_SENTENCE 5

#define GQB_ERR_UNRESOLVED 6

#define GQB_ERR_CAP_EXCEEDED 7

#define GQB_ERR_MIXED_MONOTONICITY 8

#define GQB_ERR_READING_NOT_APPLICABLE 9

#define GQB_ERR_BACKEND_DISAGREEMENT 10

#define GQB_ERR_INTERNAL 11

// A required pointer argument was null.
#define GQB_ERR_NULL_ARGUMENT 20

// A string argument was not UTF-8.
#define GQB_ERR_INVALID_UTF8 21

// An enum argument was out of range.
#define GQB_ERR_INVALID_ARGUMENT 22

// The library panicked. The call had no effect on its outputs.
#define GQB_ERR_PANIC 23

#define GQB_READING_SUBJECT_WIDE 0

#define GQB_READING_OBJECT_WIDE 1

#define GQB_READING_BRANCHING 2

#define GQB_BACKEND_ORACLE 0

#define GQB_BACKEND_CATEGORICAL 1

#define GQB_BACKEND_VECTOR 2

#define GQB_LAWS_REL 0

#define GQB_LAWS_VECT 1

// A loaded model.
typedef struct GqbModel GqbModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Loads a model file. On success `*out` owns a new handle.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
int32_t gqb_model_load_path(const char *path, struct GqbModel **out);

// Parses a model from TOML text.
//
// # Safety
// `toml` must be a NUL-terminated string and `out` a valid pointer.
int32_t gqb_model_load_str(const char *toml, struct GqbModel **out);

// Releases a model. Null is ignored.
//
// # Safety
// `model` must come from a `gqb_model_load_*` call and not be used afterwards.
void gqb_model_free(struct GqbModel *model);

// Number of entities, or 0 for a null handle.
//
// # Safety
// `model` must be null or a live handle.
size_t gqb_model_universe_size(const struct GqbModel *model);

// Evaluates one reading on one backend. `out_scalar` may be null; it
// receives the witness-path count for the vector backend and 0 otherwise.
//
// # Safety
// `model` must be a live handle, `sentence` a NUL-terminated string and
// `out_truth` a valid pointer.
int32_t gqb_eval(const struct GqbModel *model,
                 const char *sentence,
                 int32_t reading_id,
                 int32_t backend_id,
                 bool *out_truth,
                 uint64_t *out_scalar);

// The JSON comparison report for a transitive sentence: every applicable
// reading on every backend. Returns `GQB_ERR_BACKEND_DISAGREEMENT` when the
// backends disagree, in which case `*out_json` still holds the report.
//
// # Safety
// `model` must be a live handle, `sentence` a NUL-terminated string and
// `out_json` a valid pointer. Free the result with `gqb_string_free`.
int32_t gqb_report_json(const struct GqbModel *model, const char *sentence, char **out_json);

// Checks the bialgebra and snake laws on the powerset of a `size`-element
// universe. `*out_all_pass` is true when all six hold.
//
// # Safety
// `out_all_pass` must be a valid pointer.
int32_t gqb_check_laws(size_t size, int32_t instantiation, bool *out_all_pass);

// The message of the last failed call on this thread, or "" after a
// success. Valid until the next call on the same thread; do not free.
const char *gqb_last_error_message(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void gqb_string_free(char *s);

// The library version, static.
const char *gqb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GQ_BIALGEBRA_H */
