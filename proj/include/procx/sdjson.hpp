#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "procx/doc_tree.hpp"

namespace procx {

inline constexpr std::string_view kSdjsonVersion = "sdjson/1";
inline constexpr std::string_view kTreeJsonVersion = "doctree/1";

/// Parses structured-document JSON ("sdjson/1"). Elements nest under the most
/// recent heading of lower level; paragraphs and lists attach to the most
/// recent heading (or the title). Throws SchemaError with a JSON-pointer path.
DocTree parse_sdjson(std::istream& in, std::string source_name = {});
DocTree parse_sdjson(std::string_view text, std::string source_name = {});

/// Serializes a tree back to sdjson. For trees in outline form (a node's
/// paragraphs and lists come before its sub-headings, as parsers produce)
/// parsing the result yields the same shape, kinds, texts and depths.
std::string to_sdjson(const DocTree& tree);

/// Canonical tree JSON written by `procx ingest`: explicit nodes with ids,
/// depths and child lists.
std::string tree_to_json(const DocTree& tree);
/// Loads canonical tree JSON. Throws SchemaError on malformed input and
/// HierarchyError when the described tree breaks a structural invariant.
DocTree tree_from_json(std::string_view text);

enum class InputFormat { Markdown, Sdjson, TreeJson };

/// Reads a document from disk. With no explicit format, `.md`/`.markdown`
/// selects Markdown and JSON input is dispatched on its "version" field.
DocTree load_document(const std::string& path, std::optional<InputFormat> format = {});

}  // namespace procx
