import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    environment: 'happy-dom',
    environmentOptions: {
      happyDOM: {
        settings: {
          // the service under test runs on another localhost port
          fetch: { disableSameOriginPolicy: true },
        },
      },
    },
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
