import './style.css';
import { ApiClient } from './api';
import { createApp } from './app';

// default: same origin (the service mounts the build under /ui);
// ?api=http://host:port overrides for a separately hosted service
const params = new URLSearchParams(window.location.search);
const base = params.get('api') ?? '';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app mount point');

createApp(root, new ApiClient(base));
