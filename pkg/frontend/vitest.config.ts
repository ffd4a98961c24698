import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    // Renders are pure string-building; nothing here needs a DOM.
    environment: "node",
  },
});
