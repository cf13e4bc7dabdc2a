// mfib: batch front end over the C API. One command per process; the
// certificate goes to --out or stdout.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mfib/mfib_c.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

template <class T, void (*F)(T*)>
struct Deleter {
  void operator()(T* p) const { F(p); }
};
template <class T, void (*F)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, F>>;

using Ctx = Handle<mfib_context, mfib_context_free>;
using SSetH = Handle<mfib_sset, mfib_sset_free>;
using DiagramH = Handle<mfib_diagram, mfib_diagram_free>;
using FibrationH = Handle<mfib_fibration, mfib_fibration_free>;
using GroupH = Handle<mfib_group, mfib_group_free>;
using ActionH = Handle<mfib_action, mfib_action_free>;
using TwistingH = Handle<mfib_twisting, mfib_twisting_free>;
using AtlasH = Handle<mfib_atlas, mfib_atlas_free>;

// Carries a non-OK code out of a load step.
struct Abort {
  int code;
};

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string data = ss.str();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Options {
  std::string diagram, fibration, base, group, action, twisting, atlas;
  int dim = -1;
  long long budget = -1;
  std::string out, format = "json", emit;
};

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o), ctx_(mfib_context_new(nullptr)) {}

  int run(const std::string& command, json arguments) {
    command_ = command;
    arguments_ = std::move(arguments);
    int code;
    try {
      code = dispatch();
    } catch (const Abort& a) {
      code = a.code;
    }
    return finish(code);
  }

 private:
  const Options& o_;
  Ctx ctx_;
  std::string command_;
  json arguments_;
  json report_;
  std::string error_;

  void check(int rc) {
    if (rc == MFIB_OK) return;
    error_ = mfib_last_error(ctx_.get());
    throw Abort{rc};
  }

  // Runs the call, then takes ownership of the report string it wrote.
  template <class F>
  int take(F&& call, char*& report) {
    int rc = call();
    if (report) {
      report_ = json::parse(report);
      mfib_string_free(report);
    } else {
      error_ = mfib_last_error(ctx_.get());
    }
    return rc;
  }

  SSetH sset(const std::string& p) {
    mfib_sset* h = nullptr;
    check(mfib_load_sset(ctx_.get(), p.c_str(), &h));
    return SSetH(h);
  }
  DiagramH diagram(const std::string& p) {
    mfib_diagram* h = nullptr;
    check(mfib_load_diagram(ctx_.get(), p.c_str(), &h));
    return DiagramH(h);
  }
  GroupH group(const std::string& p) {
    mfib_group* h = nullptr;
    check(mfib_load_group(ctx_.get(), p.c_str(), &h));
    return GroupH(h);
  }
  ActionH action(const std::string& p) {
    mfib_action* h = nullptr;
    check(mfib_load_action(ctx_.get(), p.c_str(), &h));
    return ActionH(h);
  }

  FibrationH fibration() {
    DiagramH total;
    if (!o_.diagram.empty()) total = diagram(o_.diagram);
    mfib_fibration* h = nullptr;
    check(mfib_load_fibration(ctx_.get(), o_.fibration.empty() ? nullptr : o_.fibration.c_str(), total.get(), &h));
    return FibrationH(h);
  }

  int dispatch() {
    mfib_context* c = ctx_.get();
    if (!c) throw Abort{MFIB_ERROR};
    char* r = nullptr;
    if (command_ == "validate-diagram") {
      auto d = diagram(o_.diagram);
      return take([&] { return mfib_validate_diagram(c, d.get(), &r); }, r);
    }
    if (command_ == "basis") {
      auto d = diagram(o_.diagram);
      return take([&] { return mfib_basis(c, d.get(), &r); }, r);
    }
    if (command_ == "fibration-check") {
      auto p = fibration();
      return take([&] { return mfib_fibration_check(c, p.get(), o_.dim, &r); }, r);
    }
    if (command_ == "minimal-model") {
      auto p = fibration();
      return take([&] { return mfib_minimal_model(c, p.get(), o_.dim, o_.budget, &r); }, r);
    }
    if (command_ == "tcp-build") {
      auto B = sset(o_.base);
      auto A = action(o_.action);
      mfib_group* g = nullptr;
      check(mfib_action_group(A.get(), &g));
      GroupH G(g);
      mfib_twisting* t = nullptr;
      check(mfib_load_twisting(c, o_.twisting.c_str(), B.get(), G.get(), &t));
      TwistingH T(t);
      return take([&] { return mfib_tcp_build(c, B.get(), A.get(), T.get(), o_.dim, &r); }, r);
    }
    if (command_ == "twisting-verify") {
      auto B = sset(o_.base);
      auto G = group(o_.group);
      mfib_twisting* t = nullptr;
      check(mfib_load_twisting(c, o_.twisting.c_str(), B.get(), G.get(), &t));
      TwistingH T(t);
      return take([&] { return mfib_twisting_verify(c, B.get(), G.get(), T.get(), &r); }, r);
    }
    if (command_ == "twisting-classify") {
      auto B = sset(o_.base);
      auto G = group(o_.group);
      return take([&] { return mfib_twisting_classify(c, B.get(), G.get(), o_.dim, o_.budget, &r); }, r);
    }
    if (command_ == "wbar") {
      auto G = group(o_.group);
      return take([&] { return mfib_wbar(c, G.get(), o_.dim, &r); }, r);
    }
    if (command_ == "atlas-normalize" || command_ == "atlas-regularize") {
      mfib_atlas* a = nullptr;
      check(mfib_load_atlas(c, o_.atlas.c_str(), &a));
      AtlasH A(a);
      if (command_ == "atlas-normalize") return take([&] { return mfib_atlas_normalize(c, A.get(), &r); }, r);
      return take([&] { return mfib_atlas_regularize(c, A.get(), o_.budget, &r); }, r);
    }
    if (command_ == "classify-bundles") {
      auto B = sset(o_.base);
      auto A = action(o_.action);
      return take([&] { return mfib_classify_bundles(c, B.get(), A.get(), o_.dim, o_.budget, &r); }, r);
    }
    error_ = "unknown command " + command_;
    return MFIB_INVALID;
  }

  json inputs() const {
    json list = json::array();
    if (!ctx_) return list;
    char* s = mfib_context_files(ctx_.get());
    if (!s) return list;
    json files = json::parse(s);
    mfib_string_free(s);
    fs::path cwd = fs::current_path();
    for (const auto& f : files) {
      std::string path = f.get<std::string>();
      std::string rel = fs::path(path).lexically_relative(cwd).generic_string();
      list.push_back(json{{"file", rel.empty() ? path : rel}, {"sha256", sha256_file(path)}});
    }
    return list;
  }

  int finish(int code) {
    json cert;
    cert["tool"] = "mfib";
    cert["version"] = mfib_version();
    cert["command"] = command_;
    cert["arguments"] = arguments_;
    cert["inputs"] = inputs();
    cert["exit_code"] = code;
    if (!report_.is_null()) cert["report"] = report_;
    if (!error_.empty()) cert["error"] = error_;
    cert["timestamp"] = utc_now();

    if (!o_.emit.empty() && report_.contains("outputs")) {
      std::error_code ec;
      fs::create_directories(o_.emit, ec);
      for (const auto& [name, body] : report_["outputs"].items()) {
        std::ofstream f(fs::path(o_.emit) / name);
        f << body.dump(2) << '\n';
        if (!f) {
          std::cerr << "mfib: cannot write " << (fs::path(o_.emit) / name).string() << '\n';
          code = MFIB_ERROR;
        }
      }
    }
    if (!error_.empty()) std::cerr << "mfib: " << error_ << '\n';

    std::string text = o_.format == "text" ? as_text(cert) : cert.dump(2) + "\n";
    if (o_.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(o_.out);
      f << text;
      if (!f) {
        std::cerr << "mfib: cannot write " << o_.out << '\n';
        return MFIB_ERROR;
      }
    }
    return code;
  }

  static std::string as_text(const json& cert) {
    std::ostringstream s;
    s << cert["command"].get<std::string>() << ": exit " << cert["exit_code"].get<int>();
    if (cert.contains("report")) s << " (" << cert["report"]["verdict"].get<std::string>() << ")";
    s << '\n';
    for (const auto& in : cert["inputs"]) s << "  input " << in["file"].get<std::string>() << " sha256 " << in["sha256"].get<std::string>() << '\n';
    if (cert.contains("error")) s << "  error: " << cert["error"].get<std::string>() << '\n';
    if (!cert.contains("report")) return s.str();
    const json& r = cert["report"];
    for (const auto& c : r["checks"]) {
      s << "  [" << (c["ok"].get<bool>() ? "ok" : "FAIL") << "] " << c["name"].get<std::string>();
      if (c.contains("detail")) s << ": " << c["detail"].get<std::string>();
      s << '\n';
    }
    for (const auto& e : r["budget_events"]) s << "  budget: " << e.get<std::string>() << '\n';
    for (const auto& [k, v] : r["witnesses"].items()) {
      std::string d = v.dump();
      if (d.size() > 100) d = d.substr(0, 97) + "...";
      s << "  " << k << " = " << d << '\n';
    }
    if (r.contains("outputs"))
      for (const auto& [k, v] : r["outputs"].items()) s << "  output " << k << '\n';
    return s.str();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal fibrations of diagrams and twisted products at desk scale"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mfib_version()));
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "certificate path (default stdout)");
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--emit", o.emit, "directory for emitted output files");
  };
  auto file = [](CLI::App* s, const char* name, std::string& v, const char* what) {
    return s->add_option(name, v, what)->required();
  };
  auto dim = [&](CLI::App* s) { return s->add_option("--dim", o.dim, "dimension cap")->required()->check(CLI::NonNegativeNumber); };
  auto budget = [&](CLI::App* s) {
    return s->add_option("--budget", o.budget, "search node budget")->required()->check(CLI::PositiveNumber);
  };

  auto* vd = app.add_subcommand("validate-diagram", "check category laws, identities and functoriality");
  file(vd, "--diagram", o.diagram, "diagram file");
  auto* bs = app.add_subcommand("basis", "compute a free basis or refute freeness");
  file(bs, "--diagram", o.diagram, "diagram file");
  auto* fc = app.add_subcommand("fibration-check", "Kan lifting up to --dim");
  fc->add_option("--fibration", o.fibration, "fibration file");
  fc->add_option("--diagram", o.diagram, "total diagram (over the point when no fibration file)");
  dim(fc);
  auto* mm = app.add_subcommand("minimal-model", "extract a minimal sub-fibration with its retraction");
  mm->add_option("--fibration", o.fibration, "fibration file");
  mm->add_option("--diagram", o.diagram, "total diagram (over the point when no fibration file)");
  dim(mm);
  budget(mm);
  auto* tb = app.add_subcommand("tcp-build", "build the twisted cartesian product");
  file(tb, "--base", o.base, "base presentation");
  file(tb, "--action", o.action, "action file");
  file(tb, "--twisting", o.twisting, "twisting file");
  tb->add_option("--dim", o.dim, "also check Kan lifting up to this dimension")->check(CLI::NonNegativeNumber);
  auto* tv = app.add_subcommand("twisting-verify", "check the twisting identities");
  file(tv, "--base", o.base, "base presentation");
  file(tv, "--group", o.group, "group file");
  file(tv, "--twisting", o.twisting, "twisting file");
  auto* tc = app.add_subcommand("twisting-classify", "enumerate twisting functions up to equivalence");
  file(tc, "--base", o.base, "base presentation");
  file(tc, "--group", o.group, "group file");
  dim(tc);
  budget(tc);
  auto* wb = app.add_subcommand("wbar", "build the classifying complex and its universal twisting");
  file(wb, "--group", o.group, "group file");
  dim(wb);
  auto* an = app.add_subcommand("atlas-normalize", "normalize an atlas");
  file(an, "--atlas", o.atlas, "atlas file");
  auto* ar = app.add_subcommand("atlas-regularize", "regularize an atlas and read off its twisting");
  file(ar, "--atlas", o.atlas, "atlas file");
  budget(ar);
  auto* cb = app.add_subcommand("classify-bundles", "compare twisting classes with homotopy classes of maps");
  file(cb, "--base", o.base, "base presentation");
  file(cb, "--action", o.action, "action file");
  dim(cb);
  budget(cb);

  for (auto* s : app.get_subcommands([](CLI::App*) { return true; })) common(s);
  for (auto* s : {fc, mm})
    s->callback([&o] {
      if (o.fibration.empty() && o.diagram.empty()) throw CLI::ValidationError("--fibration or --diagram is required");
    });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return MFIB_INVALID;
  }

  CLI::App* sub = app.get_subcommands().front();
  json args = json::object();
  for (const auto* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name();
    if (name == "--out" || name == "--format" || name == "--emit") continue;
    const std::string v = opt->as<std::string>();
    if (name == "--dim" || name == "--budget")
      args[name.substr(2)] = std::stoll(v);
    else
      args[name.substr(2)] = v;
  }
  Runner runner(o);
  return runner.run(sub->get_name(), args);
}
