#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace svagen {

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replaces each `{name}` with values[name]. Every key must occur in the template at
/// least once (TemplateError otherwise); other braces are left alone.
std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& values);

/// Whole file as a string; throws std::runtime_error when unreadable.
std::string read_text_file(const std::string& path);

}  // namespace svagen
