#pragma once

#include <string>
#include <string_view>

#include "procx/doc_tree.hpp"

namespace procx {

/// Parses the Markdown subset used for corpus authoring:
///   - ATX headings (`#`..`######`); the first level-1 heading becomes the
///     title, otherwise `source_name` does;
///   - ordered (`1.`/`1)`) and bullet (`-`, `*`, `+`) list items, nested in
///     units of two spaces (tabs count as two spaces);
///   - blank-line separated prose as paragraphs;
///   - `![alt](src)` marks the containing node as having an image. A line
///     holding only an image marks the preceding sibling instead.
/// Never fails: anything unrecognized is paragraph text.
DocTree parse_markdown(std::string_view text, std::string source_name = {});

}  // namespace procx
