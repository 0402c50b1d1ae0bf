import { defineConfig } from 'vitest/config';

// base './' keeps asset URLs relative, so the built bundle works both at
// the domain root and mounted under the service's /ui prefix.
export default defineConfig({
  base: './',
  build: {
    outDir: 'dist',
    sourcemap: true,
  },
  test: {
    environment: 'jsdom',
    include: ['tests/**/*.test.ts'],
  },
});
