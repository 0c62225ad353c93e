#pragma once

#include <string>
#include <vector>

namespace esbgk {

// %.17g: fixed significant digits so identical runs serialize identically
std::string fmt17(double x);
std::string json_escape(const std::string& s);

// Minimal ordered JSON emitter. Keys appear in insertion order and doubles go
// through fmt17, which is the whole point of not using a general library here.
class JsonWriter {
  public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(const std::string& k);
    void value(double v);
    void value(long long v);
    void value(int v) { value(static_cast<long long>(v)); }
    void value(unsigned long long v);
    void value(bool v);
    void value(const std::string& v);
    void value(const char* v) { value(std::string(v)); }
    void null();

    template <typename T>
    void kv(const std::string& k, const T& v) {
        key(k);
        value(v);
    }

    const std::string& str() const { return out_; }

  private:
    void separator();
    std::string out_;
    std::vector<bool> first_;  // per nesting level
    bool pending_key_ = false;
};

void write_text_file(const std::string& path, const std::string& content);

} // namespace esbgk
