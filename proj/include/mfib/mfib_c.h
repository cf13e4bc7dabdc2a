#ifndef MFIB_C_H
#define MFIB_C_H

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes. FALSE means a verdict of "no" with a witness in the report. */
enum {
  MFIB_OK = 0,
  MFIB_FALSE = 1,
  MFIB_BUDGET = 2,
  MFIB_INVALID = 3,
  MFIB_ERROR = 4
};

typedef struct mfib_context mfib_context;
typedef struct mfib_sset mfib_sset;
typedef struct mfib_diagram mfib_diagram;
typedef struct mfib_fibration mfib_fibration;
typedef struct mfib_group mfib_group;
typedef struct mfib_action mfib_action;
typedef struct mfib_twisting mfib_twisting;
typedef struct mfib_atlas mfib_atlas;

const char* mfib_version(void);

/* A context resolves relative paths against cwd (NULL: process cwd), keeps
   the last error message and the list of files read. */
mfib_context* mfib_context_new(const char* cwd);
void mfib_context_free(mfib_context* ctx);
const char* mfib_last_error(const mfib_context* ctx);
/* JSON array of the files read so far; free with mfib_string_free. */
char* mfib_context_files(const mfib_context* ctx);
void mfib_string_free(char* s);

int mfib_load_sset(mfib_context* ctx, const char* path, mfib_sset** out);
int mfib_load_diagram(mfib_context* ctx, const char* path, mfib_diagram** out);
/* path may be NULL when total is given: the fibration over the point. */
int mfib_load_fibration(mfib_context* ctx, const char* path, const mfib_diagram* total, mfib_fibration** out);
int mfib_load_group(mfib_context* ctx, const char* path, mfib_group** out);
int mfib_load_action(mfib_context* ctx, const char* path, mfib_action** out);
int mfib_action_group(const mfib_action* action, mfib_group** out);
int mfib_load_twisting(mfib_context* ctx, const char* path, const mfib_sset* base, const mfib_group* group,
                       mfib_twisting** out);
int mfib_load_atlas(mfib_context* ctx, const char* path, mfib_atlas** out);

void mfib_sset_free(mfib_sset* h);
void mfib_diagram_free(mfib_diagram* h);
void mfib_fibration_free(mfib_fibration* h);
void mfib_group_free(mfib_group* h);
void mfib_action_free(mfib_action* h);
void mfib_twisting_free(mfib_twisting* h);
void mfib_atlas_free(mfib_atlas* h);

/* Operations write a JSON report (free with mfib_string_free). On
   MFIB_INVALID / MFIB_ERROR the report may be NULL; see mfib_last_error. */
int mfib_validate_diagram(mfib_context* ctx, const mfib_diagram* d, char** report);
int mfib_basis(mfib_context* ctx, const mfib_diagram* d, char** report);
int mfib_fibration_check(mfib_context* ctx, const mfib_fibration* p, int dim, char** report);
int mfib_minimal_model(mfib_context* ctx, const mfib_fibration* p, int dim, long long budget, char** report);
/* dim < 0 skips the Kan check. */
int mfib_tcp_build(mfib_context* ctx, const mfib_sset* base, const mfib_action* action, const mfib_twisting* t,
                   int dim, char** report);
int mfib_twisting_verify(mfib_context* ctx, const mfib_sset* base, const mfib_group* group, const mfib_twisting* t,
                         char** report);
int mfib_twisting_classify(mfib_context* ctx, const mfib_sset* base, const mfib_group* group, int dim,
                           long long budget, char** report);
int mfib_wbar(mfib_context* ctx, const mfib_group* group, int dim, char** report);
int mfib_atlas_normalize(mfib_context* ctx, const mfib_atlas* a, char** report);
int mfib_atlas_regularize(mfib_context* ctx, const mfib_atlas* a, long long budget, char** report);
int mfib_classify_bundles(mfib_context* ctx, const mfib_sset* base, const mfib_action* action, int dim,
                          long long budget, char** report);

#ifdef __cplusplus
}
#endif

#endif
