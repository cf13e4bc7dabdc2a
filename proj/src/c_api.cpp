#include "mfib/mfib_c.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "mfib/commands.hpp"

using namespace mfib;

struct mfib_context {
  io::Loader loader;
  std::string error;
  explicit mfib_context(std::filesystem::path cwd) : loader(std::move(cwd)) {}
};
struct mfib_sset {
  SSet value;
};
struct mfib_diagram {
  CDiagram value;
};
struct mfib_fibration {
  Fibration value;
};
struct mfib_group {
  std::shared_ptr<const SimplicialGroup> value;
};
struct mfib_action {
  GroupAction value;
};
struct mfib_twisting {
  TwistingFunction value;
};
struct mfib_atlas {
  io::AtlasInput value;
};

namespace {

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs f, mapping exceptions to codes and recording the message.
template <class F>
int guarded(mfib_context* ctx, F&& f) {
  if (!ctx) return MFIB_ERROR;
  ctx->error.clear();
  try {
    return f();
  } catch (const ValidationError& e) {
    ctx->error = e.what();
    return MFIB_INVALID;
  } catch (const TruncationError& e) {
    ctx->error = e.what();
    return MFIB_INVALID;
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
    return MFIB_ERROR;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return MFIB_ERROR;
  }
}

int emit(const cmd::Report& r, char** report) {
  if (report) *report = dup(r.body.dump());
  return static_cast<int>(r.status);
}

template <class H, class V>
int make(H** out, V&& v) {
  *out = new H{std::forward<V>(v)};
  return MFIB_OK;
}

}  // namespace

extern "C" {

const char* mfib_version(void) { return "0.1.0"; }

mfib_context* mfib_context_new(const char* cwd) {
  try {
    return new mfib_context(cwd ? std::filesystem::path(cwd) : std::filesystem::current_path());
  } catch (...) {
    return nullptr;
  }
}

void mfib_context_free(mfib_context* ctx) { delete ctx; }

const char* mfib_last_error(const mfib_context* ctx) { return ctx ? ctx->error.c_str() : "no context"; }

char* mfib_context_files(const mfib_context* ctx) {
  if (!ctx) return nullptr;
  return dup(io::json(ctx->loader.files()).dump());
}

void mfib_string_free(char* s) { std::free(s); }

int mfib_load_sset(mfib_context* ctx, const char* path, mfib_sset** out) {
  return guarded(ctx, [&] { return make(out, ctx->loader.presentation(ctx->loader.open(path))); });
}

int mfib_load_diagram(mfib_context* ctx, const char* path, mfib_diagram** out) {
  return guarded(ctx, [&] { return make(out, ctx->loader.diagram(ctx->loader.open(path))); });
}

int mfib_load_fibration(mfib_context* ctx, const char* path, const mfib_diagram* total, mfib_fibration** out) {
  return guarded(ctx, [&] {
    if (!path) {
      if (!total) throw ValidationError("need a fibration file or a total diagram");
      return make(out, over_point(total->value));
    }
    return make(out, ctx->loader.fibration(ctx->loader.open(path), total ? &total->value : nullptr));
  });
}

int mfib_load_group(mfib_context* ctx, const char* path, mfib_group** out) {
  return guarded(ctx, [&] { return make(out, ctx->loader.group(ctx->loader.open(path))); });
}

int mfib_load_action(mfib_context* ctx, const char* path, mfib_action** out) {
  return guarded(ctx, [&] { return make(out, ctx->loader.action(ctx->loader.open(path))); });
}

int mfib_action_group(const mfib_action* action, mfib_group** out) {
  if (!action || !out) return MFIB_ERROR;
  *out = new mfib_group{action->value.group};
  return MFIB_OK;
}

int mfib_load_twisting(mfib_context* ctx, const char* path, const mfib_sset* base, const mfib_group* group,
                       mfib_twisting** out) {
  return guarded(ctx, [&] {
    return make(out, ctx->loader.twisting(ctx->loader.open(path), base->value, *group->value));
  });
}

int mfib_load_atlas(mfib_context* ctx, const char* path, mfib_atlas** out) {
  return guarded(ctx, [&] { return make(out, ctx->loader.atlas(ctx->loader.open(path))); });
}

void mfib_sset_free(mfib_sset* h) { delete h; }
void mfib_diagram_free(mfib_diagram* h) { delete h; }
void mfib_fibration_free(mfib_fibration* h) { delete h; }
void mfib_group_free(mfib_group* h) { delete h; }
void mfib_action_free(mfib_action* h) { delete h; }
void mfib_twisting_free(mfib_twisting* h) { delete h; }
void mfib_atlas_free(mfib_atlas* h) { delete h; }

int mfib_validate_diagram(mfib_context* ctx, const mfib_diagram* d, char** report) {
  return guarded(ctx, [&] { return emit(cmd::validate_diagram(d->value), report); });
}

int mfib_basis(mfib_context* ctx, const mfib_diagram* d, char** report) {
  return guarded(ctx, [&] { return emit(cmd::basis(d->value), report); });
}

int mfib_fibration_check(mfib_context* ctx, const mfib_fibration* p, int dim, char** report) {
  return guarded(ctx, [&] { return emit(cmd::fibration_check(p->value, dim), report); });
}

int mfib_minimal_model(mfib_context* ctx, const mfib_fibration* p, int dim, long long budget, char** report) {
  return guarded(ctx, [&] { return emit(cmd::minimal_model(p->value, dim, budget), report); });
}

int mfib_tcp_build(mfib_context* ctx, const mfib_sset* base, const mfib_action* action, const mfib_twisting* t,
                   int dim, char** report) {
  return guarded(ctx, [&] { return emit(cmd::tcp_build(base->value, action->value, t->value, dim), report); });
}

int mfib_twisting_verify(mfib_context* ctx, const mfib_sset* base, const mfib_group* group, const mfib_twisting* t,
                         char** report) {
  return guarded(ctx, [&] { return emit(cmd::twisting_verify(base->value, *group->value, t->value), report); });
}

int mfib_twisting_classify(mfib_context* ctx, const mfib_sset* base, const mfib_group* group, int dim,
                           long long budget, char** report) {
  return guarded(ctx, [&] { return emit(cmd::twisting_classify(base->value, *group->value, dim, budget), report); });
}

int mfib_wbar(mfib_context* ctx, const mfib_group* group, int dim, char** report) {
  return guarded(ctx, [&] { return emit(cmd::wbar(*group->value, dim), report); });
}

int mfib_atlas_normalize(mfib_context* ctx, const mfib_atlas* a, char** report) {
  return guarded(ctx, [&] { return emit(cmd::atlas_normalize(a->value), report); });
}

int mfib_atlas_regularize(mfib_context* ctx, const mfib_atlas* a, long long budget, char** report) {
  return guarded(ctx, [&] { return emit(cmd::atlas_regularize(a->value, budget), report); });
}

int mfib_classify_bundles(mfib_context* ctx, const mfib_sset* base, const mfib_action* action, int dim,
                          long long budget, char** report) {
  return guarded(ctx, [&] { return emit(cmd::classify_bundles(base->value, action->value, dim, budget), report); });
}

}  // extern "C"
