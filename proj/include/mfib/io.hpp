#pragma once

#include <deque>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "mfib/bundles.hpp"
#include "mfib/minimal.hpp"

namespace mfib::io {

using json = nlohmann::json;

// Names the file, the JSON pointer inside it and the offending token.
struct ParseError : ValidationError {
  std::string file, path, token;
  ParseError(std::string file, std::string path, std::string token, const std::string& msg);
};

// A JSON value with its origin. Strings in place of objects are file
// references, resolved relative to the referencing file.
struct Node {
  const json* value = nullptr;
  std::string file;
  std::string path;
  std::filesystem::path dir;

  const json& operator*() const { return *value; }
  const json* operator->() const { return value; }
  bool has(const std::string& key) const { return value->is_object() && value->contains(key); }
  Node at(const std::string& key) const;  // throws ParseError when missing
  Node at(std::size_t i) const;
  [[noreturn]] void fail(const std::string& msg, const std::string& token = {}) const;
  int as_int() const;
  long long as_int64() const;
  std::string as_string() const;
};

struct AtlasInput {
  SSet base;
  GroupAction action;
  TwistingFunction twisting;
  GammaFunction gamma;
  Tcp tcp;
  Atlas atlas;
};

class Loader {
 public:
  explicit Loader(std::filesystem::path cwd = std::filesystem::current_path());

  Node open(const std::string& path);
  Node parse_text(const std::string& text, const std::string& name = "<string>");
  Node resolve(const Node& n);  // follows a string file reference

  SSet presentation(const Node& n);
  std::shared_ptr<const FiniteCategory> category(const Node& n);
  CDiagram diagram(const Node& n);
  // total may be supplied separately; base defaults to the point.
  Fibration fibration(const Node& n, const CDiagram* total = nullptr);
  std::shared_ptr<const SimplicialGroup> group(const Node& n);
  FiniteGroup finite_group(const Node& n);
  GroupAction action(const Node& n);
  TwistingFunction twisting(const Node& n, const SSet& B, const SimplicialGroup& G);
  GammaFunction gamma(const Node& n, const SSet& B, const SimplicialGroup& G, int d);
  AtlasInput atlas(const Node& n);

  // Files read so far, in load order, without repeats.
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path cwd_;
  std::deque<json> docs_;
  std::vector<std::string> files_;
  Node load_file(const std::filesystem::path& p, const Node* from, const std::string& shown = {});
};

json presentation_json(const SSet& X);
json category_json(const FiniteCategory& C);
json diagram_json(const CDiagram& D);
json fibration_json(const Fibration& p);
json map_json(const SSet& X, const SSet& Y, const SMap& f);  // generator -> image reference
json group_json(const SimplicialGroup& G);
json twisting_json(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t);
json action_json(const GroupAction& A);
json gamma_json(const SSet& B, const SimplicialGroup& G, const GammaFunction& g);
json atlas_json(const AtlasInput& in, const GammaFunction& gamma);

}  // namespace mfib::io
