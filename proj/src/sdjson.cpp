#include "procx/sdjson.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "procx/error.hpp"
#include "procx/markdown.hpp"

namespace procx {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "/" + key, "expected string");
  return v.get<std::string>();
}

bool optional_bool(const json& obj, const char* key, const std::string& path,
                   bool fallback = false) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) throw SchemaError(path + "/" + key, "expected boolean");
  return it->get<bool>();
}

class SdjsonReader {
 public:
  SdjsonReader(std::string title, std::string source) : builder_(std::move(title), std::move(source)) {}

  void read_elements(const json& elements) {
    if (!elements.is_array()) throw SchemaError("/elements", "expected array");
    // (heading level, node) pairs; level 0 is the title.
    std::vector<std::pair<int, NodeId>> outline{{0, builder_.root()}};
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const std::string path = "/elements/" + std::to_string(i);
      const json& el = elements[i];
      if (!el.is_object()) throw SchemaError(path, "expected object");
      const std::string type = require_string(el, "type", path);
      if (type == "heading") {
        const json& level = require(el, "level", path);
        if (!level.is_number_integer() || level.get<int>() < 1)
          throw SchemaError(path + "/level", "expected positive integer");
        DocNode node;
        node.kind = NodeKind::Heading;
        node.level = level.get<int>();
        node.text = require_string(el, "text", path);
        node.associated_image = optional_bool(el, "image", path);
        while (outline.back().first >= node.level) outline.pop_back();
        const int lvl = node.level;
        NodeId id = builder_.add(outline.back().second, std::move(node));
        outline.emplace_back(lvl, id);
      } else if (type == "paragraph") {
        DocNode node;
        node.kind = NodeKind::Paragraph;
        node.text = require_string(el, "text", path);
        node.associated_image = optional_bool(el, "image", path);
        builder_.add(outline.back().second, std::move(node));
      } else if (type == "list") {
        read_list(el, outline.back().second, path);
      } else {
        throw SchemaError(path + "/type", "unknown element type '" + type + "'");
      }
    }
  }

  DocTree finish() && { return std::move(builder_).build(); }

 private:
  void read_list(const json& list, NodeId parent, const std::string& path) {
    if (!list.is_object()) throw SchemaError(path, "expected list object");
    DocNode block;
    block.kind = NodeKind::ListBlock;
    block.ordered = optional_bool(list, "ordered", path);
    NodeId block_id = builder_.add(parent, std::move(block));
    const json& items = require(list, "items", path);
    if (!items.is_array() || items.empty())
      throw SchemaError(path + "/items", "expected non-empty array");
    for (std::size_t j = 0; j < items.size(); ++j) {
      const std::string ipath = path + "/items/" + std::to_string(j);
      const json& item = items[j];
      if (!item.is_object()) throw SchemaError(ipath, "expected object");
      DocNode node;
      node.kind = NodeKind::ListItem;
      node.text = require_string(item, "text", ipath);
      node.associated_image = optional_bool(item, "image", ipath);
      NodeId item_id = builder_.add(block_id, std::move(node));
      auto sub = item.find("sublist");
      if (sub != item.end() && !sub->is_null()) read_list(*sub, item_id, ipath + "/sublist");
    }
  }

  TreeBuilder builder_;
};

ordered_json list_to_sdjson(const DocTree& tree, const DocNode& block) {
  ordered_json list;
  list["type"] = "list";
  list["ordered"] = block.ordered;
  ordered_json items = ordered_json::array();
  for (NodeId item_id : block.children) {
    const DocNode& item = tree.node(item_id);
    ordered_json entry;
    entry["text"] = item.text;
    if (item.associated_image) entry["image"] = true;
    for (NodeId child : item.children) {
      if (tree.node(child).kind == NodeKind::ListBlock) {
        ordered_json sub = list_to_sdjson(tree, tree.node(child));
        sub.erase("type");
        entry["sublist"] = std::move(sub);
        break;
      }
    }
    items.push_back(std::move(entry));
  }
  list["items"] = std::move(items);
  return list;
}

void outline_to_sdjson(const DocTree& tree, const DocNode& parent, ordered_json& elements) {
  for (NodeId child_id : parent.children) {
    const DocNode& child = tree.node(child_id);
    switch (child.kind) {
      case NodeKind::Heading: {
        ordered_json el;
        el["type"] = "heading";
        el["level"] = child.level;
        el["text"] = child.text;
        if (child.associated_image) el["image"] = true;
        elements.push_back(std::move(el));
        outline_to_sdjson(tree, child, elements);
        break;
      }
      case NodeKind::Paragraph: {
        ordered_json el;
        el["type"] = "paragraph";
        el["text"] = child.text;
        if (child.associated_image) el["image"] = true;
        elements.push_back(std::move(el));
        break;
      }
      case NodeKind::ListBlock:
        elements.push_back(list_to_sdjson(tree, child));
        break;
      default:
        break;
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = name.find('.');
  return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
}

}  // namespace

DocTree parse_sdjson(std::string_view text, std::string source_name) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) throw SchemaError("", "malformed JSON");
  if (!doc.is_object()) throw SchemaError("", "no root title");
  if (auto v = doc.find("version"); v != doc.end()) {
    if (!v->is_string() || v->get<std::string>() != kSdjsonVersion)
      throw SchemaError("/version", "unsupported version, expected sdjson/1");
  }
  auto title = doc.find("title");
  if (title == doc.end() || !title->is_string() || title->get<std::string>().empty())
    throw SchemaError("/title", "no root title");
  SdjsonReader reader(title->get<std::string>(), std::move(source_name));
  reader.read_elements(require(doc, "elements", ""));
  return std::move(reader).finish();
}

DocTree parse_sdjson(std::istream& in, std::string source_name) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sdjson(buf.str(), std::move(source_name));
}

std::string to_sdjson(const DocTree& tree) {
  ordered_json doc;
  doc["version"] = kSdjsonVersion;
  doc["title"] = tree.node(tree.root()).text;
  ordered_json elements = ordered_json::array();
  outline_to_sdjson(tree, tree.node(tree.root()), elements);
  doc["elements"] = std::move(elements);
  return doc.dump(2);
}

std::string tree_to_json(const DocTree& tree) {
  ordered_json doc;
  doc["version"] = kTreeJsonVersion;
  doc["source"] = tree.source_name();
  doc["root"] = tree.root();
  ordered_json nodes = ordered_json::array();
  for (const DocNode& node : tree.nodes()) {
    ordered_json n;
    n["id"] = node.id;
    n["kind"] = to_string(node.kind);
    if (node.kind == NodeKind::Heading) n["level"] = node.level;
    if (node.kind == NodeKind::ListBlock) n["ordered"] = node.ordered;
    n["text"] = node.text;
    n["depth"] = node.depth;
    if (node.associated_image) n["image"] = true;
    n["children"] = node.children;
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2);
}

namespace {
DocTree tree_from_json_impl(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw SchemaError("", "malformed JSON");
  if (require_string(doc, "version", "") != kTreeJsonVersion)
    throw SchemaError("/version", "unsupported version, expected doctree/1");
  const json& nodes_json = require(doc, "nodes", "");
  if (!nodes_json.is_array()) throw SchemaError("/nodes", "expected array");
  std::vector<DocNode> nodes(nodes_json.size());
  std::vector<bool> seen(nodes.size(), false);
  for (std::size_t i = 0; i < nodes_json.size(); ++i) {
    const std::string path = "/nodes/" + std::to_string(i);
    const json& n = nodes_json[i];
    if (!n.is_object()) throw SchemaError(path, "expected object");
    const json& id = require(n, "id", path);
    if (!id.is_number_integer() || id.get<long long>() < 0 ||
        id.get<std::size_t>() >= nodes.size() || seen[id.get<std::size_t>()])
      throw SchemaError(path + "/id", "ids must be unique and dense");
    DocNode node;
    node.id = id.get<NodeId>();
    auto kind = node_kind_from_string(require_string(n, "kind", path));
    if (!kind) throw SchemaError(path + "/kind", "unknown node kind");
    node.kind = *kind;
    node.level = n.value("level", 0);
    node.ordered = optional_bool(n, "ordered", path);
    node.text = require_string(n, "text", path);
    node.depth = require(n, "depth", path).get<int>();
    node.associated_image = optional_bool(n, "image", path);
    const json& children = require(n, "children", path);
    if (!children.is_array()) throw SchemaError(path + "/children", "expected array");
    for (const auto& c : children) node.children.push_back(c.get<NodeId>());
    seen[static_cast<std::size_t>(node.id)] = true;
    nodes[static_cast<std::size_t>(node.id)] = std::move(node);
  }
  const json& root = require(doc, "root", "");
  DocTree tree(std::move(nodes), root.get<NodeId>(), doc.value("source", std::string{}));
  auto violations = validate_tree(tree);
  for (const auto& v : violations)
    if (v.message.rfind("heading level", 0) == 0) throw HierarchyError(v.to_string());
  if (!violations.empty()) throw SchemaError("/nodes", violations.front().to_string());
  return tree;
}
}  // namespace

DocTree tree_from_json(std::string_view text) {
  try {
    return tree_from_json_impl(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("/nodes", e.what());
  }
}

DocTree load_document(const std::string& path, std::optional<InputFormat> format) {
  const std::string content = read_file(path);
  if (!format) {
    const bool md = path.ends_with(".md") || path.ends_with(".markdown") || path.ends_with(".txt");
    if (md) {
      format = InputFormat::Markdown;
    } else {
      json probe = json::parse(content, nullptr, false);
      if (!probe.is_discarded() && probe.is_object() && probe.value("version", "") == kTreeJsonVersion)
        format = InputFormat::TreeJson;
      else
        format = InputFormat::Sdjson;
    }
  }
  switch (*format) {
    case InputFormat::Markdown:
      return parse_markdown(content, file_stem(path));
    case InputFormat::TreeJson:
      return tree_from_json(content);
    case InputFormat::Sdjson:
      break;
  }
  return parse_sdjson(content, file_stem(path));
}

}  // namespace procx
