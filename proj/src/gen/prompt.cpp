#include "svagen/prompt.hpp"

#include <fstream>
#include <sstream>

namespace svagen {

std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& values) {
  for (const auto& [key, _] : values) {
    if (tmpl.find("{" + key + "}") == std::string_view::npos) {
      throw TemplateError("template placeholder {" + key + "} missing");
    }
  }
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        auto it = values.find(std::string(tmpl.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace svagen
