// SPDX-License-Identifier: Apache-2.0
#include "ibc/hash.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <memory>

#include "ibc/errors.hpp"

namespace ibc {

namespace {

struct CtxFree {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};

[[noreturn]] void fail(const char* what) { throw Error(std::string("openssl: ") + what); }

}  // namespace

Digest32 sha256(std::span<const std::uint8_t> data) {
  Digest32 out{};
  unsigned len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    fail("EVP_Digest");
  }
  return out;
}

Digest32 hmac_sha256(std::span<const std::uint8_t> key,
                     std::span<const std::uint8_t> data) {
  // One-shot HMAC via EVP_PKEY; avoids the deprecated HMAC() entry point.
  Digest32 out{};
  EVP_PKEY* pkey =
      EVP_PKEY_new_raw_private_key(EVP_PKEY_HMAC, nullptr, key.data(), key.size());
  if (pkey == nullptr) fail("EVP_PKEY_new_raw_private_key");
  std::unique_ptr<EVP_MD_CTX, CtxFree> ctx(EVP_MD_CTX_new());
  std::size_t len = out.size();
  bool ok = ctx != nullptr &&
            EVP_DigestSignInit(ctx.get(), nullptr, EVP_sha256(), nullptr, pkey) == 1 &&
            EVP_DigestSignUpdate(ctx.get(), data.data(), data.size()) == 1 &&
            EVP_DigestSignFinal(ctx.get(), out.data(), &len) == 1 && len == out.size();
  EVP_PKEY_free(pkey);
  if (!ok) fail("HMAC-SHA256");
  return out;
}

std::vector<std::uint8_t> kdf(std::string_view label,
                              std::span<const std::uint8_t> data,
                              std::size_t out_len) {
  std::vector<std::uint8_t> block;
  block.reserve(label.size() + 5 + data.size());
  block.insert(block.end(), label.begin(), label.end());
  block.push_back(0x00);
  std::size_t ctr_at = block.size();
  block.resize(block.size() + 4);
  block.insert(block.end(), data.begin(), data.end());

  std::vector<std::uint8_t> out;
  out.reserve(out_len);
  for (std::uint32_t i = 0; out.size() < out_len; ++i) {
    block[ctr_at + 0] = static_cast<std::uint8_t>(i >> 24);
    block[ctr_at + 1] = static_cast<std::uint8_t>(i >> 16);
    block[ctr_at + 2] = static_cast<std::uint8_t>(i >> 8);
    block[ctr_at + 3] = static_cast<std::uint8_t>(i);
    Digest32 d = sha256(block);
    std::size_t take = std::min<std::size_t>(d.size(), out_len - out.size());
    out.insert(out.end(), d.begin(), d.begin() + take);
  }
  return out;
}

Digest32 kdf32(std::string_view label, std::span<const std::uint8_t> data) {
  auto v = kdf(label, data, 32);
  Digest32 out{};
  std::memcpy(out.data(), v.data(), 32);
  return out;
}

std::vector<std::uint8_t> aead_seal(std::span<const std::uint8_t, kAeadKeyLen> key,
                                    std::span<const std::uint8_t, kAeadNonceLen> nonce,
                                    std::span<const std::uint8_t> aad,
                                    std::span<const std::uint8_t> plaintext) {
  std::unique_ptr<EVP_CIPHER_CTX, CtxFree> ctx(EVP_CIPHER_CTX_new());
  if (!ctx) fail("EVP_CIPHER_CTX_new");
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1) {
    fail("EncryptInit");
  }
  int n = 0;
  if (!aad.empty() && EVP_EncryptUpdate(ctx.get(), nullptr, &n, aad.data(), aad.size()) != 1) {
    fail("aad");
  }
  std::vector<std::uint8_t> out(plaintext.size() + kAeadTagLen);
  int clen = 0;
  if (!plaintext.empty()) {
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &clen, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1) {
      fail("EncryptUpdate");
    }
  }
  int fin = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + clen, &fin) != 1) fail("EncryptFinal");
  clen += fin;
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kAeadTagLen,
                          out.data() + clen) != 1) {
    fail("GET_TAG");
  }
  out.resize(clen + kAeadTagLen);
  return out;
}

std::optional<std::vector<std::uint8_t>> aead_open(
    std::span<const std::uint8_t, kAeadKeyLen> key,
    std::span<const std::uint8_t, kAeadNonceLen> nonce,
    std::span<const std::uint8_t> aad,
    std::span<const std::uint8_t> boxed) {
  if (boxed.size() < kAeadTagLen) return std::nullopt;
  std::size_t clen = boxed.size() - kAeadTagLen;
  std::unique_ptr<EVP_CIPHER_CTX, CtxFree> ctx(EVP_CIPHER_CTX_new());
  if (!ctx) fail("EVP_CIPHER_CTX_new");
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1) {
    fail("DecryptInit");
  }
  int n = 0;
  if (!aad.empty() && EVP_DecryptUpdate(ctx.get(), nullptr, &n, aad.data(), aad.size()) != 1) {
    fail("aad");
  }
  std::vector<std::uint8_t> out(clen);
  int plen = 0;
  if (clen > 0) {
    if (EVP_DecryptUpdate(ctx.get(), out.data(), &plen, boxed.data(),
                          static_cast<int>(clen)) != 1) {
      return std::nullopt;
    }
  }
  std::uint8_t tag[kAeadTagLen];
  std::memcpy(tag, boxed.data() + clen, kAeadTagLen);
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kAeadTagLen, tag) != 1) {
    fail("SET_TAG");
  }
  int fin = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + plen, &fin) != 1) {
    return std::nullopt;  // tag mismatch
  }
  out.resize(plen + fin);
  return out;
}

}  // namespace ibc
